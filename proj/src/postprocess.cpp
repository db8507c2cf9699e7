#include "rmm/solver.hpp"

#include <cmath>

namespace rmm {

namespace {

struct Local {
  const DofMap& dm;
  std::span<const int> dofs;
  const Eigen::VectorXd& x;
  ElementGeometry g;

  Local(const Solution& s, int t) : dm(*s.dofmap), dofs(s.dofmap->element(t)), x(s.x), g(element_geometry(*s.mesh, t)) {}

  double c(int i) const { return x[dofs[i]]; }

  Vec3 u(const Vec3& ref) const {
    const ScalarBasis b = eval_lagrange(polynomial_order(dm.sequence), ref);
    Vec3 v = Vec3::Zero();
    for (int i = 0; i < b.size; ++i)
      for (int k = 0; k < 3; ++k) v[k] += c(3 * i + k) * b.value[i];
    return v;
  }
  Mat3 grad_u(const Vec3& ref) const {
    const ScalarBasis b = eval_lagrange(polynomial_order(dm.sequence), ref);
    Mat3 m = Mat3::Zero();
    for (int i = 0; i < b.size; ++i) {
      const Vec3 gi = g.inv_jt * b.grad[i];
      for (int k = 0; k < 3; ++k) m.row(k) += c(3 * i + k) * gi.transpose();
    }
    return m;
  }
  Mat3 P(const Vec3& ref, bool curl) const {
    const VectorBasis b = eval_nedelec(nedelec_kind(dm.sequence), ref);
    Mat3 m = Mat3::Zero();
    for (int j = 0; j < b.size; ++j) {
      const Vec3 v = curl ? piola_contravariant(g, b.curl[j]) : piola_covariant(g, b.value[j]);
      for (int r = 0; r < 3; ++r) m.row(r) += c(dm.local_u + 3 * j + r) * v.transpose();
    }
    return m;
  }
  Mat3 D(const Vec3& ref) const {
    if (dm.local_d == 0) return Mat3::Zero();
    const VectorBasis b = eval_rt0(ref);
    Mat3 m = Mat3::Zero();
    for (int f = 0; f < 4; ++f) {
      const Vec3 v = piola_contravariant(g, b.value[f]);
      for (int r = 0; r < 3; ++r) m.row(r) += c(dm.local_u + dm.local_p + 3 * f + r) * v.transpose();
    }
    return m;
  }
};

template <class Eval>
double integrate(const Mesh& mesh, int degree, Eval&& eval) {
  const QuadratureRule& rule = quadrature(degree);
  double s = 0.0;
  for (int t = 0; t < mesh.num_tets(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    double st = 0.0;
    for (size_t q = 0; q < rule.points.size(); ++q) st += rule.weights[q] * eval(t, g, rule.points[q]);
    s += st * std::abs(g.det_j);
  }
  return s;
}

constexpr int kErrorDegree = 8;

}  // namespace

Vec3 Solution::u(int tet, const Vec3& ref) const { return Local(*this, tet).u(ref); }
Mat3 Solution::P(int tet, const Vec3& ref) const { return Local(*this, tet).P(ref, false); }
Mat3 Solution::curl_P(int tet, const Vec3& ref) const { return Local(*this, tet).P(ref, true); }
Mat3 Solution::D(int tet, const Vec3& ref) const { return Local(*this, tet).D(ref); }
Vec3 Solution::q(int tet) const {
  if (dofmap->n_q == 0) return Vec3::Zero();
  return {x[dofmap->q_dof(tet, 0)], x[dofmap->q_dof(tet, 1)], x[dofmap->q_dof(tet, 2)]};
}

double l2_error(const Solution& sol, Field field, const VectorField& exact) {
  if (field != Field::u) throw InputError("vector exact field only applies to u");
  const double s = integrate(*sol.mesh, kErrorDegree, [&](int t, const ElementGeometry& g, const Vec3& ref) {
    const Vec3 d = (exact ? exact(g.map(ref)) : Vec3(Vec3::Zero())) - sol.u(t, ref);
    return d.squaredNorm();
  });
  return std::sqrt(s);
}

double l2_error(const Solution& sol, Field field, const TensorField& exact) {
  if (field == Field::u) throw InputError("tensor exact field does not apply to u");
  const double s = integrate(*sol.mesh, kErrorDegree, [&](int t, const ElementGeometry& g, const Vec3& ref) {
    const Mat3 h = field == Field::P ? sol.P(t, ref) : sol.D(t, ref);
    const Mat3 d = (exact ? exact(g.map(ref)) : Mat3(Mat3::Zero())) - h;
    return d.squaredNorm();
  });
  return std::sqrt(s);
}

double l2_norm(const Mesh& mesh, const VectorField& f) {
  return std::sqrt(integrate(mesh, kErrorDegree, [&](int, const ElementGeometry& g, const Vec3& ref) {
    return f(g.map(ref)).squaredNorm();
  }));
}

double l2_norm(const Mesh& mesh, const TensorField& f) {
  return std::sqrt(integrate(mesh, kErrorDegree, [&](int, const ElementGeometry& g, const Vec3& ref) {
    return f(g.map(ref)).squaredNorm();
  }));
}

double energy(const Solution& sol, const MaterialParams& p, EnergyKind which) {
  const double curl_w = p.lc_infinite() ? 0.0 : p.mu_macro * p.L_c * p.L_c;
  const double s = integrate(*sol.mesh, 4, [&](int t, const ElementGeometry&, const Vec3& ref) {
    const Local loc(sol, t);
    const Mat3 du = loc.grad_u(ref);
    if (which == EnergyKind::cauchy) {
      const Mat3 e = sym(du);
      return (apply_material_tensor(Tensor::Cmacro, p, e).array() * e.array()).sum();
    }
    const Mat3 P = loc.P(ref, false);
    const Mat3 e = du - P;
    const Mat3 stress = apply_material_tensor(Tensor::Ce, p, e) + apply_material_tensor(Tensor::Cc, p, e);
    double w = (stress.array() * e.array()).sum();
    w += (apply_material_tensor(Tensor::Cmicro, p, P).array() * P.array()).sum();
    if (curl_w != 0.0) w += curl_w * loc.P(ref, true).squaredNorm();
    return w;
  });
  return 0.5 * s;
}

double reaction_force(const CsrMatrix& K, const Eigen::VectorXd& f, const Eigen::VectorXd& x, const Mesh& mesh,
                      const DofMap& dm, SideMask region, int direction) {
  if (direction < 0 || direction > 2) throw InputError("direction must be 0, 1 or 2");
  if (K.n != dm.total || f.size() != dm.total || x.size() != dm.total)
    throw InputError("reaction force needs the unconstrained system");
  auto row_residual = [&](int i) {
    double s = -f[i];
    for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) s += K.values[k] * x[K.col_idx[k]];
    return s;
  };
  double r = 0.0;
  int count = 0;
  const int nv = mesh.num_vertices();
  for (int v = 0; v < nv; ++v)
    if (mesh.vertex_sides[v] & region) {
      r += row_residual(dm.u_dof(v, direction));
      ++count;
    }
  if (dm.sequence == Sequence::quadratic)
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (mesh.edge_sides[e] & region) {
        r += row_residual(dm.u_dof(nv + e, direction));
        ++count;
      }
  if (count == 0) throw InputError("reaction region holds no displacement dofs");
  return r;
}

double boundary_traction(const Solution& sol, const MaterialParams& p, SideMask region, int direction) {
  const Mesh& mesh = *sol.mesh;
  const TriangleRule& rule = triangle_rule(6);
  double total = 0.0;
  for (int t = 0; t < mesh.num_tets(); ++t)
    for (int f = 0; f < 4; ++f) {
      const int gf = mesh.tet_faces[t][f];
      if (!(mesh.face_sides[gf] & region)) continue;
      const Local loc(sol, t);
      const auto& rf = kRefFaces[f];
      const int opposite = 6 - rf[0] - rf[1] - rf[2];
      const auto& tv = mesh.tets[t];
      const Vec3& a = mesh.vertices[tv[rf[0]]];
      const Vec3 ab = mesh.vertices[tv[rf[1]]] - a, ac = mesh.vertices[tv[rf[2]]] - a;
      Vec3 n = ab.cross(ac);  // length = 2 area
      if (n.dot(a - mesh.vertices[tv[opposite]]) < 0.0) n = -n;
      const Mat3 inv_j = loc.g.inv_jt.transpose();
      for (size_t q = 0; q < rule.points.size(); ++q) {
        const Vec3 x = a + rule.points[q][0] * ab + rule.points[q][1] * ac;
        const Vec3 ref = inv_j * (x - loc.g.origin);
        const Mat3 e = loc.grad_u(ref) - loc.P(ref, false);
        const Mat3 s = apply_material_tensor(Tensor::Ce, p, e) + apply_material_tensor(Tensor::Cc, p, e);
        total += rule.weights[q] * (s * n)[direction];
      }
    }
  return total;
}

double convergence_rate(const std::vector<std::pair<double, double>>& h_e) {
  if (h_e.size() < 2) throw InputError("convergence rate needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, e] : h_e) {
    if (!(h > 0.0) || !(e > 0.0)) throw InputError("convergence rate needs positive samples");
    const double lx = std::log(h), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(h_e.size());
  const double den = m * sxx - sx * sx;
  if (den == 0.0) throw InputError("convergence rate needs distinct mesh sizes");
  return (m * sxy - sx * sy) / den;
}

}  // namespace rmm
