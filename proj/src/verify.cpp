#include "rmm/verify.hpp"

#include "rmm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

namespace rmm {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
  Mat3 mat(double lo, double hi) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = uniform(lo, hi);
    return m;
  }
  // Uniform point of the reference tetrahedron.
  Vec3 ref_point() {
    for (;;) {
      const Vec3 p = vec(0.0, 1.0);
      if (p.sum() <= 1.0) return p;
    }
  }
  Eigen::VectorXd vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(-1.0, 1.0);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

CheckResult make(std::string name, double error, double tol, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.error = error;
  c.tolerance = tol;
  c.passed = std::isfinite(error) && error <= tol;
  c.detail = std::move(detail);
  return c;
}

Mesh cube(int n) { return generate_cube_mesh(n, Vec3(-1, -1, -1), Vec3(1, 1, 1)); }

constexpr Sequence kSequences[] = {Sequence::linear, Sequence::quadratic};

// Random polynomial tensor field of total degree <= 3 with exact curl.
class CubicTensor {
 public:
  explicit CubicTensor(Sampler& s) {
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b)
        for (int c = 0; a + b + c <= 3; ++c) exps_.push_back({a, b, c});
    for (auto& m : coef_) {
      m.resize(exps_.size());
      for (double& v : m) v = s.uniform(-1.0, 1.0);
    }
  }
  Mat3 value(const Vec3& x) const {
    Mat3 m;
    for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = eval(k, x, -1);
    return m;
  }
  // Row-wise curl.
  Mat3 curl(const Vec3& x) const {
    auto d = [&](int r, int s, int axis) { return eval(3 * r + s, x, axis); };
    Mat3 c;
    for (int r = 0; r < 3; ++r) {
      c(r, 0) = d(r, 2, 1) - d(r, 1, 2);
      c(r, 1) = d(r, 0, 2) - d(r, 2, 0);
      c(r, 2) = d(r, 1, 0) - d(r, 0, 1);
    }
    return c;
  }

 private:
  double eval(int comp, const Vec3& x, int axis) const {
    double s = 0.0;
    for (size_t i = 0; i < exps_.size(); ++i) {
      std::array<int, 3> e = exps_[i];
      double f = coef_[comp][i];
      if (axis >= 0) {
        if (e[axis] == 0) continue;
        f *= e[axis];
        --e[axis];
      }
      s += f * std::pow(x[0], e[0]) * std::pow(x[1], e[1]) * std::pow(x[2], e[2]);
    }
    return s;
  }
  std::vector<std::array<int, 3>> exps_;
  std::array<std::vector<double>, 9> coef_;
};

Vec3 to_reference(const ElementGeometry& g, const Vec3& x) { return g.inv_jt.transpose() * (x - g.origin); }

// P_h row `r` of tet t from global coefficients, through the supplied basis.
Vec3 nedelec_row(const VerifyOptions& o, const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& x, int t,
                 const Vec3& ref, int r, bool curl) {
  const ElementGeometry g = element_geometry(mesh, t);
  const VectorBasis b = o.nedelec(nedelec_kind(dm.sequence), ref);
  const auto dofs = dm.element(t);
  Vec3 v = Vec3::Zero();
  for (int j = 0; j < b.size; ++j) {
    const double c = x[dofs[dm.local_u + 3 * j + r]];
    v += c * (curl ? piola_contravariant(g, b.curl[j]) : piola_covariant(g, b.value[j]));
  }
  return v;
}

Vec3 rt_row(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& x, int t, const Vec3& ref, int r) {
  const ElementGeometry g = element_geometry(mesh, t);
  const VectorBasis b = eval_rt0(ref);
  const auto dofs = dm.element(t);
  Vec3 v = Vec3::Zero();
  for (int f = 0; f < 4; ++f) v += x[dofs[dm.local_u + dm.local_p + 3 * f + r]] * piola_contravariant(g, b.value[f]);
  return v;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

CheckResult check_partition_of_unity(const VerifyOptions& o) {
  Sampler s(o.seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 p = s.ref_point();
    for (int order : {1, 2}) {
      const ScalarBasis b = eval_lagrange(order, p);
      double sum = 0.0;
      Vec3 gsum = Vec3::Zero();
      for (int k = 0; k < b.size; ++k) {
        sum += b.value[k];
        gsum += b.grad[k];
      }
      err = std::max({err, std::abs(sum - 1.0), gsum.lpNorm<Eigen::Infinity>()});
    }
  }
  return make("partition_of_unity", err, 1e-14);
}

CheckResult check_quadrature_exactness(const VerifyOptions& o) {
  Sampler s(o.seed);
  double err = 0.0;
  for (int degree = 1; degree <= 20; ++degree) {
    const QuadratureRule& q = quadrature(degree);
    for (int trial = 0; trial < 5; ++trial) {
      const int a = static_cast<int>(s.uniform(0, degree + 1));
      const int b = static_cast<int>(s.uniform(0, degree - a + 1));
      const int c = degree - a - b;
      double sum = 0.0;
      for (size_t k = 0; k < q.points.size(); ++k)
        sum += q.weights[k] * std::pow(q.points[k][0], a) * std::pow(q.points[k][1], b) * std::pow(q.points[k][2], c);
      const double exact = factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
      err = std::max(err, std::abs(sum - exact) / exact);
    }
  }
  return make("quadrature_exactness", err, 1e-12);
}

CheckResult check_dof_duality(const VerifyOptions& o) {
  double err = 0.0;
  // Edge functionals: one tangential moment (I0) or two endpoint values (II1).
  for (NedelecKind kind : {NedelecKind::I0, NedelecKind::II1}) {
    const int per_edge = kind == NedelecKind::I0 ? 1 : 2;
    for (int j = 0; j < 6 * per_edge; ++j) {
      const VectorField f = [&](const Vec3& p) { return o.nedelec(kind, p).value[j]; };
      for (int e = 0; e < 6; ++e) {
        const auto dofs = nedelec_edge_dofs(kind, reference_vertex(kRefEdges[e][0]), reference_vertex(kRefEdges[e][1]), f);
        for (int k = 0; k < per_edge; ++k) {
          const double expect = (j == per_edge * e + k) ? 1.0 : 0.0;
          err = std::max(err, std::abs(dofs[k] - expect));
        }
      }
    }
  }
  for (int j = 0; j < 4; ++j) {
    const VectorField f = [&](const Vec3& p) { return eval_rt0(p).value[j]; };
    for (int face = 0; face < 4; ++face) {
      const auto& v = kRefFaces[face];
      const double dof = rt_face_dof(reference_vertex(v[0]), reference_vertex(v[1]), reference_vertex(v[2]), f);
      err = std::max(err, std::abs(dof - (j == face ? 1.0 : 0.0)));
    }
  }
  return make("dof_duality", err, 1e-12);
}

CheckResult check_curl_consistency(const VerifyOptions& o) {
  Sampler s(o.seed);
  const double h = 1e-3;
  double err = 0.0;
  for (NedelecKind kind : {NedelecKind::I0, NedelecKind::II1}) {
    for (int i = 0; i < 20; ++i) {
      const Vec3 p = s.ref_point();
      const VectorBasis b = o.nedelec(kind, p);
      std::array<VectorBasis, 3> plus, minus;
      for (int a = 0; a < 3; ++a) {
        Vec3 e = Vec3::Zero();
        e[a] = h;
        plus[a] = o.nedelec(kind, p + e);
        minus[a] = o.nedelec(kind, p - e);
      }
      for (int j = 0; j < b.size; ++j) {
        auto d = [&](int comp, int axis) { return (plus[axis].value[j][comp] - minus[axis].value[j][comp]) / (2 * h); };
        const Vec3 c(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
        err = std::max(err, (c - b.curl[j]).lpNorm<Eigen::Infinity>());
      }
    }
  }
  return make("curl_consistency", err, 1e-9);
}

CheckResult check_mesh_volume(const VerifyOptions& o) {
  const Mesh mesh = cube(o.mesh_n);
  double vol = 0.0;
  for (int t = 0; t < mesh.num_tets(); ++t) vol += element_geometry(mesh, t).volume;
  return make("mesh_volume", std::abs(vol - 8.0) / 8.0, 1e-12);
}

CheckResult check_tangential_continuity(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  std::vector<std::vector<int>> edge_tets(mesh.num_edges());
  for (int t = 0; t < mesh.num_tets(); ++t)
    for (int e : mesh.tet_edges[t]) edge_tets[e].push_back(t);
  double err = 0.0;
  for (Sequence seq : kSequences) {
    const DofMap dm = build_dofmap(mesh, seq, Formulation::primal);
    const Eigen::VectorXd x = s.vector(dm.total);
    for (int e = 0; e < mesh.num_edges(); ++e) {
      const Vec3& a = mesh.vertices[mesh.edges[e][0]];
      const Vec3 tan = mesh.vertices[mesh.edges[e][1]] - a;
      for (double mu : {0.2, 0.5, 0.8}) {
        const Vec3 p = a + mu * tan;
        const int t0 = edge_tets[e][0];
        for (int r = 0; r < 3; ++r) {
          const double ref = nedelec_row(o, mesh, dm, x, t0, to_reference(element_geometry(mesh, t0), p), r, false).dot(tan);
          for (size_t k = 1; k < edge_tets[e].size(); ++k) {
            const int t = edge_tets[e][k];
            const double v = nedelec_row(o, mesh, dm, x, t, to_reference(element_geometry(mesh, t), p), r, false).dot(tan);
            err = std::max(err, std::abs(v - ref));
          }
        }
      }
    }
  }
  return make("tangential_continuity", err, 1e-12);
}

CheckResult check_normal_continuity(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  std::vector<std::vector<int>> face_tets(mesh.num_faces());
  for (int t = 0; t < mesh.num_tets(); ++t)
    for (int f : mesh.tet_faces[t]) face_tets[f].push_back(t);
  const DofMap dm = build_dofmap(mesh, Sequence::linear, Formulation::mixed);
  const Eigen::VectorXd x = s.vector(dm.total);
  double err = 0.0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (face_tets[f].size() != 2) continue;
    const auto& fv = mesh.faces[f];
    const Vec3& a = mesh.vertices[fv[0]];
    const Vec3 ab = mesh.vertices[fv[1]] - a, ac = mesh.vertices[fv[2]] - a;
    const Vec3 n = ab.cross(ac);
    for (const auto& st : {std::array<double, 2>{0.2, 0.2}, {0.6, 0.2}, {0.2, 0.6}}) {
      const Vec3 p = a + st[0] * ab + st[1] * ac;
      for (int r = 0; r < 3; ++r) {
        const int t0 = face_tets[f][0], t1 = face_tets[f][1];
        const double v0 = rt_row(mesh, dm, x, t0, to_reference(element_geometry(mesh, t0), p), r).dot(n);
        const double v1 = rt_row(mesh, dm, x, t1, to_reference(element_geometry(mesh, t1), p), r).dot(n);
        err = std::max(err, std::abs(v0 - v1));
      }
    }
  }
  return make("normal_continuity", err, 1e-12);
}

CheckResult check_discrete_exactness(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  double err = 0.0;
  for (Sequence seq : kSequences) {
    const DofMap dm = build_dofmap(mesh, seq, Formulation::mixed);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(dm.total), grad, curl, div;
    u.head(dm.n_u) = s.vector(dm.n_u);
    discrete_gradient(mesh, dm, u, grad);
    discrete_curl(mesh, dm, grad, curl);
    err = std::max(err, curl.segment(dm.off_d, dm.n_d).lpNorm<Eigen::Infinity>());
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dm.total);
    p.segment(dm.off_p, dm.n_p) = s.vector(dm.n_p);
    discrete_curl(mesh, dm, p, curl);
    discrete_divergence(mesh, dm, curl, div);
    err = std::max(err, div.segment(dm.off_q, dm.n_q).lpNorm<Eigen::Infinity>());
  }
  return make("discrete_exactness", err, 1e-12);
}

CheckResult check_commuting_diagram(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  const CubicTensor P(s);
  const TensorField pf = [&](const Vec3& x) { return P.value(x); };
  const TensorField cf = [&](const Vec3& x) { return P.curl(x); };
  double coef_err = 0.0, field_err = 0.0, div_err = 0.0;
  for (Sequence seq : kSequences) {
    const DofMap dm = build_dofmap(mesh, seq, Formulation::mixed);
    Eigen::VectorXd pc, dc, curl_pc, div;
    interpolate_p(mesh, dm, pf, pc);
    interpolate_d(mesh, dm, cf, dc);
    discrete_curl(mesh, dm, pc, curl_pc);
    const double scale = std::max(1.0, dc.lpNorm<Eigen::Infinity>());
    coef_err = std::max(coef_err, (curl_pc - dc).segment(dm.off_d, dm.n_d).lpNorm<Eigen::Infinity>() / scale);
    discrete_divergence(mesh, dm, dc, div);
    div_err = std::max(div_err, div.segment(dm.off_q, dm.n_q).lpNorm<Eigen::Infinity>() / scale);
    // Field form: curl through the Nedelec basis against the RT field.
    for (int t = 0; t < mesh.num_tets(); ++t)
      for (int k = 0; k < 4; ++k) {
        const Vec3 ref = s.ref_point();
        for (int r = 0; r < 3; ++r) {
          const Vec3 a = nedelec_row(o, mesh, dm, pc, t, ref, r, true);
          const Vec3 b = rt_row(mesh, dm, dc, t, ref, r);
          field_err = std::max(field_err, (a - b).lpNorm<Eigen::Infinity>() / scale);
        }
      }
  }
  std::ostringstream d;
  d << "coefficients " << coef_err << ", fields " << field_err << ", div " << div_err;
  return make("commuting_diagram", std::max({coef_err, field_err, div_err}), 1e-10, d.str());
}

CheckResult check_material_symmetry(const VerifyOptions& o) {
  Sampler s(o.seed);
  const MaterialParams p = beam_params();
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Mat3 a = s.mat(-1, 1);
    for (Tensor t : {Tensor::Ce, Tensor::Cmicro, Tensor::Cmacro}) {
      const Mat3 m = apply_material_tensor(t, p, a);
      err = std::max(err, (m - m.transpose()).norm() / std::max(1.0, m.norm()));
    }
    const Mat3 c = apply_material_tensor(Tensor::Cc, p, a);
    err = std::max(err, (c + c.transpose()).norm() / std::max(1.0, c.norm()));
  }
  return make("material_symmetry", err, 1e-14);
}

CheckResult check_homogenization(const VerifyOptions& o) {
  Sampler s(o.seed);
  MaterialParams p = beam_params();
  std::tie(p.lambda_e, p.mu_e) = meso_from_micro_macro(p);
  double err = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Mat3 a = sym(s.mat(-1, 1));
    const Mat3 direct = apply_material_tensor(Tensor::Cmacro, p, a);
    const Mat3 hom = homogenized_macro(p, a);
    err = std::max(err, (direct - hom).norm() / direct.norm());
  }
  return make("homogenization", err, 1e-9);
}

CheckResult check_manufactured_residuals(const VerifyOptions& o) {
  Sampler s(o.seed);
  double err = 0.0;
  std::string worst;
  for (CaseName c : {CaseName::conv_muc1, CaseName::conv_muc0, CaseName::robustness, CaseName::limit_inf})
    for (double lc : {1e-3, 1.0, 1e3}) {
      const MaterialParams p = case_params(c, lc);
      for (int i = 0; i < 20; ++i) {
        const StrongResidual r = strong_form_residual_oracle(c, p, s.vec(-0.95, 0.95));
        const double e = std::max(r.force, r.moment);
        if (e > err) {
          err = e;
          worst = to_string(c) + " L_c=" + format_lc(lc);
        }
      }
    }
  return make("manufactured_residuals", err, 1e-6, worst.empty() ? "" : "worst: " + worst);
}

CheckResult check_limit_fields(const VerifyOptions& o) {
  Sampler s(o.seed);
  const MaterialParams p = case_params(CaseName::limit_inf, kInf);
  const double h = 1e-3;
  auto field = [&](const Vec3& x, bool d) {
    const CaseValues v = evaluate_case(CaseName::limit_inf, p, x);
    return d ? v.D : v.P;
  };
  auto deriv = [&](const Vec3& x, int axis, bool d) {
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    return Mat3((-field(x + 2 * e, d) + 8 * field(x + e, d) - 8 * field(x - e, d) + field(x - 2 * e, d)) / (12 * h));
  };
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = s.vec(-0.95, 0.95);
    const Mat3 dx = deriv(x, 0, false), dy = deriv(x, 1, false), dz = deriv(x, 2, false);
    const double scale = std::max(1.0, field(x, false).norm());
    for (int r = 0; r < 3; ++r) {
      const Vec3 c(dy(r, 2) - dz(r, 1), dz(r, 0) - dx(r, 2), dx(r, 1) - dy(r, 0));
      err = std::max(err, c.norm() / scale);
    }
    const Mat3 ddx = deriv(x, 0, true), ddy = deriv(x, 1, true), ddz = deriv(x, 2, true);
    const double dscale = std::max(1.0, field(x, true).norm());
    for (int r = 0; r < 3; ++r) err = std::max(err, std::abs(ddx(r, 0) + ddy(r, 1) + ddz(r, 2)) / dscale);
  }
  return make("limit_fields", err, 1e-7);
}

CheckResult check_matrix_symmetry(const VerifyOptions&) {
  const Mesh mesh = cube(1);
  MaterialParams p = beam_params();
  p.L_c = 1.0;
  double err = 0.0;
  for (Sequence seq : kSequences)
    for (ElementKind kind : {ElementKind::primal, ElementKind::mixed, ElementKind::mixed_limit}) {
      const Formulation f = kind == ElementKind::primal ? Formulation::primal : Formulation::mixed;
      const DofMap dm = build_dofmap(mesh, seq, f);
      MaterialParams q = p;
      if (kind == ElementKind::mixed_limit) q.L_c = kInf;
      const GlobalSystem sys = assemble_global(mesh, dm, kind, q, {}, BoundaryData{}, {});
      err = std::max(err, sys.K.asymmetry() / sys.K.max_abs());
    }
  return make("matrix_symmetry", err, 1e-12);
}

CheckResult check_consistent_coupling(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  // Random quadratic displacement and its exact gradient.
  std::array<Mat3, 3> H;
  for (auto& h : H) h = sym(s.mat(-1, 1));
  const Mat3 A = s.mat(-1, 1);
  const Vec3 b = s.vec(-1, 1);
  const VectorField u = [&](const Vec3& x) {
    Vec3 v = A * x + b;
    for (int k = 0; k < 3; ++k) v[k] += 0.5 * x.dot(H[k] * x);
    return v;
  };
  const TensorField du = [&](const Vec3& x) {
    Mat3 g = A;
    for (int k = 0; k < 3; ++k) g.row(k) += (H[k] * x).transpose();
    return g;
  };
  double err = 0.0;
  for (Sequence seq : kSequences) {
    const DofMap dm = build_dofmap(mesh, seq, Formulation::primal);
    DirichletSpec spec;
    spec.u = u;
    spec.p_mode = PTrace::consistent;
    const BoundaryData bc = make_boundary_data(mesh, dm, spec, false);
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(dm.total);
    if (seq == Sequence::quadratic) {
      interpolate_p(mesh, dm, du, expect);
    } else {
      for (int e = 0; e < mesh.num_edges(); ++e) {
        const Vec3 d = u(mesh.vertices[mesh.edges[e][1]]) - u(mesh.vertices[mesh.edges[e][0]]);
        for (int r = 0; r < 3; ++r) expect[dm.p_dof(e, 0, r)] = d[r];
      }
    }
    for (size_t k = 0; k < bc.dofs.size(); ++k) {
      const int i = bc.dofs[k];
      if (i >= dm.off_p && i < dm.off_p + dm.n_p) err = std::max(err, std::abs(bc.values[k] - expect[i]));
    }
  }
  return make("consistent_coupling", err, 1e-12);
}

CheckResult check_patch_test(const VerifyOptions& o) {
  Sampler s(o.seed);
  const Mesh mesh = cube(o.mesh_n);
  const Mat3 A = s.mat(-1, 1);
  const Vec3 b = s.vec(-1, 1);
  MaterialParams p = beam_params();
  p.L_c = 1.0;
  const Mat3 m = apply_material_tensor(Tensor::Cmicro, p, A);
  double err = 0.0, residual = 0.0;
  for (Sequence seq : kSequences)
    for (Formulation f : {Formulation::primal, Formulation::mixed}) {
      ProblemSetup setup;
      setup.sequence = seq;
      setup.formulation = f;
      setup.params = p;
      setup.loads.M = [m](const Vec3&) { return m; };
      setup.dirichlet.u = [A, b](const Vec3& x) { return Vec3(A * x + b); };
      setup.dirichlet.p_mode = PTrace::consistent;
      setup.solver = SolverKind::direct;
      const ProblemResult r = solve_problem(mesh, setup);
      const Solution sol = r.solution(mesh);
      const VectorField ue = [A, b](const Vec3& x) { return Vec3(A * x + b); };
      const TensorField pe = [A](const Vec3&) { return A; };
      err = std::max({err, l2_error(sol, Field::u, ue) / l2_norm(mesh, ue),
                      l2_error(sol, Field::P, pe) / l2_norm(mesh, pe)});
      residual = std::max(residual, r.stats.residual);
    }
  std::ostringstream d;
  d << "solver residual " << residual;
  return make("patch_test", std::max(err, residual), 1e-8, d.str());
}

CheckResult check_primal_mixed_agreement(const VerifyOptions& o) {
  const Mesh mesh = cube(o.mesh_n);
  double err = 0.0;
  for (Sequence seq : kSequences) {
    std::array<std::array<double, 4>, 2> v{};
    for (int k = 0; k < 2; ++k) {
      ProblemSetup setup = case_setup(CaseName::conv_muc1, seq, k == 0 ? Formulation::primal : Formulation::mixed, 1.0);
      setup.solver = SolverKind::direct;
      const ProblemResult r = solve_problem(mesh, setup);
      const CaseErrors e = case_errors(mesh, r, CaseName::conv_muc1, 1.0);
      const Solution sol = r.solution(mesh);
      v[k] = {l2_error(sol, Field::u, VectorField{}), l2_error(sol, Field::P, TensorField{}), e.u_error, e.P_error};
    }
    for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(v[0][i] - v[1][i]) / std::abs(v[0][i]));
  }
  return make("primal_mixed_agreement", err, 1e-8);
}

std::vector<CheckResult> run_verification(const VerifyOptions& o) {
  using Check = CheckResult (*)(const VerifyOptions&);
  static const std::pair<const char*, Check> checks[] = {
      {"partition_of_unity", check_partition_of_unity},
      {"quadrature_exactness", check_quadrature_exactness},
      {"dof_duality", check_dof_duality},
      {"curl_consistency", check_curl_consistency},
      {"mesh_volume", check_mesh_volume},
      {"tangential_continuity", check_tangential_continuity},
      {"normal_continuity", check_normal_continuity},
      {"discrete_exactness", check_discrete_exactness},
      {"commuting_diagram", check_commuting_diagram},
      {"material_symmetry", check_material_symmetry},
      {"homogenization", check_homogenization},
      {"manufactured_residuals", check_manufactured_residuals},
      {"limit_fields", check_limit_fields},
      {"matrix_symmetry", check_matrix_symmetry},
      {"consistent_coupling", check_consistent_coupling},
      {"patch_test", check_patch_test},
      {"primal_mixed_agreement", check_primal_mixed_agreement},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, check] : checks) {
    try {
      out.push_back(check(o));
    } catch (const std::exception& e) {
      out.push_back(make(name, std::numeric_limits<double>::infinity(), 0.0, e.what()));
    }
  }
  return out;
}

}  // namespace rmm
