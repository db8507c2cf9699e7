#include "rmm/assembly.hpp"

#include <cmath>

namespace rmm {

namespace {

using Mat9 = Eigen::Matrix<double, 9, 9>;

// Tensor as a 9x9 matrix acting on row-major flattened 3x3 matrices.
Mat9 tensor_matrix(Tensor which, const MaterialParams& p) {
  Mat9 m;
  for (int j = 0; j < 9; ++j) {
    Mat3 e = Mat3::Zero();
    e(j / 3, j % 3) = 1.0;
    const Mat3 img = apply_material_tensor(which, p, e);
    for (int i = 0; i < 9; ++i) m(i, j) = img(i / 3, i % 3);
  }
  return m;
}

// Basis functions mapped to one physical quadrature point.
struct PointBasis {
  int nu = 0, np = 0;
  std::array<double, 10> n{};
  std::array<Vec3, 10> grad_n{};
  std::array<Vec3, 12> theta{}, curl_theta{};
  std::array<Vec3, 4> phi{};
  std::array<double, 4> div_phi{};
};

PointBasis map_basis(const ElementGeometry& g, Sequence seq, bool with_rt, const Vec3& ref) {
  PointBasis b;
  const ScalarBasis s = eval_lagrange(polynomial_order(seq), ref);
  b.nu = s.size;
  for (int i = 0; i < s.size; ++i) {
    b.n[i] = s.value[i];
    b.grad_n[i] = g.inv_jt * s.grad[i];
  }
  const VectorBasis v = eval_nedelec(nedelec_kind(seq), ref);
  b.np = v.size;
  for (int j = 0; j < v.size; ++j) {
    b.theta[j] = piola_covariant(g, v.value[j]);
    b.curl_theta[j] = piola_contravariant(g, v.curl[j]);
  }
  if (with_rt) {
    const VectorBasis r = eval_rt0(ref);
    for (int f = 0; f < 4; ++f) {
      b.phi[f] = piola_contravariant(g, r.value[f]);
      b.div_phi[f] = r.div[f] / g.det_j;
    }
  }
  return b;
}

int load_degree(Sequence seq) { return polynomial_order(seq) + 4; }

}  // namespace

ElementKind element_kind(Formulation f, const MaterialParams& params) {
  if (f == Formulation::primal) {
    if (params.lc_infinite()) throw InputError("L_c = inf requires the mixed formulation");
    return ElementKind::primal;
  }
  if (params.lc_infinite()) return ElementKind::mixed_limit;
  if (!(params.L_c > 0.0)) throw InputError("the mixed formulation needs L_c > 0");
  return ElementKind::mixed;
}

ElementSystem element_system(const ElementGeometry& geom, Sequence seq, ElementKind kind,
                             const MaterialParams& params, const Loads& loads) {
  const bool mixed = kind == ElementKind::mixed || kind == ElementKind::mixed_limit;
  const int nu = 3 * (seq == Sequence::linear ? 4 : 10);
  const int np = 3 * (seq == Sequence::linear ? 6 : 12);
  const int nd = mixed ? 12 : 0, nq = mixed ? 3 : 0;
  const int n = nu + np + nd + nq;
  const int off_p = nu, off_d = nu + np, off_q = nu + np + nd;

  ElementSystem es;
  es.k_local = Eigen::MatrixXd::Zero(n, n);
  es.f_local = Eigen::VectorXd::Zero(n);
  const double jac = std::abs(geom.det_j);

  Mat9 c_e, c_micro, c_macro;
  if (kind == ElementKind::cauchy) {
    c_macro = tensor_matrix(Tensor::Cmacro, params);
  } else {
    c_e = tensor_matrix(Tensor::Ce, params) + tensor_matrix(Tensor::Cc, params);
    c_micro = tensor_matrix(Tensor::Cmicro, params);
  }
  const double curl_weight =
      kind == ElementKind::primal && params.L_c > 0.0 ? params.mu_macro * params.L_c * params.L_c : 0.0;
  const double d_weight = kind == ElementKind::mixed ? 1.0 / (params.mu_macro * params.L_c * params.L_c) : 0.0;

  // Integrands are at most quadratic for both sequences.
  const QuadratureRule& rule = quadrature(2);
  Eigen::MatrixXd be(9, n), bp(9, n), bc(9, n), bd(9, n);
  Eigen::Matrix<double, 3, Eigen::Dynamic> bdiv(3, n);
  for (size_t qp = 0; qp < rule.points.size(); ++qp) {
    const double w = rule.weights[qp] * jac;
    const PointBasis b = map_basis(geom, seq, mixed, rule.points[qp]);
    be.setZero();
    bp.setZero();
    // E = Du - P, row-major flattening.
    for (int i = 0; i < b.nu; ++i)
      for (int c = 0; c < 3; ++c)
        for (int s = 0; s < 3; ++s) be(3 * c + s, 3 * i + c) = b.grad_n[i][s];
    if (kind == ElementKind::cauchy) {
      es.k_local.noalias() += w * be.transpose() * (c_macro * be);
      continue;
    }
    for (int j = 0; j < b.np; ++j)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          be(3 * r + s, off_p + 3 * j + r) = -b.theta[j][s];
          bp(3 * r + s, off_p + 3 * j + r) = b.theta[j][s];
        }
    es.k_local.noalias() += w * be.transpose() * (c_e * be);
    es.k_local.noalias() += w * bp.transpose() * (c_micro * bp);
    if (curl_weight == 0.0 && !mixed) continue;
    bc.setZero();
    for (int j = 0; j < b.np; ++j)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) bc(3 * r + s, off_p + 3 * j + r) = b.curl_theta[j][s];
    if (!mixed) {
      es.k_local.noalias() += (w * curl_weight) * bc.transpose() * bc;
      continue;
    }
    bd.setZero();
    bdiv.setZero();
    for (int f = 0; f < 4; ++f)
      for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < 3; ++s) bd(3 * r + s, off_d + 3 * f + r) = b.phi[f][s];
        bdiv(r, off_d + 3 * f + r) = b.div_phi[f];
      }
    const Eigen::MatrixXd cd = w * bc.transpose() * bd;
    es.k_local += cd + cd.transpose();
    if (d_weight != 0.0) es.k_local.noalias() -= (w * d_weight) * bd.transpose() * bd;
    for (int r = 0; r < 3; ++r)
      for (int col = off_d; col < off_q; ++col) {
        const double v = w * bdiv(r, col);
        es.k_local(off_q + r, col) += v;
        es.k_local(col, off_q + r) += v;
      }
  }

  if (!loads.f && !loads.M) return es;
  const QuadratureRule& lrule = quadrature(load_degree(seq));
  for (size_t qp = 0; qp < lrule.points.size(); ++qp) {
    const double w = lrule.weights[qp] * jac;
    const Vec3 x = geom.map(lrule.points[qp]);
    const PointBasis b = map_basis(geom, seq, false, lrule.points[qp]);
    if (loads.f) {
      const Vec3 f = loads.f(x);
      for (int i = 0; i < b.nu; ++i)
        for (int c = 0; c < 3; ++c) es.f_local[3 * i + c] += w * b.n[i] * f[c];
    }
    if (loads.M && kind != ElementKind::cauchy) {
      const Mat3 M = loads.M(x);
      for (int j = 0; j < b.np; ++j) {
        const Vec3 mt = M * b.theta[j];
        for (int r = 0; r < 3; ++r) es.f_local[off_p + 3 * j + r] += w * mt[r];
      }
    }
  }
  return es;
}

ElementSystem element_primal(const ElementGeometry& geom, Sequence seq, const MaterialParams& params,
                             const Loads& loads) {
  return element_system(geom, seq, ElementKind::primal, params, loads);
}

ElementSystem element_mixed(const ElementGeometry& geom, Sequence seq, const MaterialParams& params,
                            const Loads& loads) {
  return element_system(geom, seq, element_kind(Formulation::mixed, params), params, loads);
}

Loads case_loads(CaseName c, const MaterialParams& params) {
  if (c == CaseName::none) return {};
  const MaterialParams p = params;
  Loads l;
  l.f = [c, p](const Vec3& x) { return evaluate_case(c, p, x).f; };
  l.M = [c, p](const Vec3& x) { return evaluate_case(c, p, x).M; };
  return l;
}

}  // namespace rmm
