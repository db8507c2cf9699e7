#include "rmm/fespace.hpp"

#include <algorithm>

namespace rmm {

namespace {

constexpr int kEdgePoints = 6;
constexpr int kFaceDegree = 10;

// [[1/3,1/6],[1/6,1/3]]^-1 maps the two linear moments to endpoint values.
std::array<double, 2> endpoint_values(double m0, double m1) {
  return {4.0 * m0 - 2.0 * m1, -2.0 * m0 + 4.0 * m1};
}

}  // namespace

std::array<double, 2> nedelec_edge_dofs(NedelecKind kind, const Vec3& a, const Vec3& b,
                                        const VectorField& p) {
  const LineRule& g = gauss_line(kEdgePoints);
  const Vec3 t = b - a;
  double m0 = 0.0, m1 = 0.0;
  for (size_t i = 0; i < g.points.size(); ++i) {
    const double mu = g.points[i];
    const double v = g.weights[i] * p(a + mu * t).dot(t);
    m0 += (1.0 - mu) * v;
    m1 += mu * v;
  }
  if (kind == NedelecKind::I0) return {m0 + m1, 0.0};
  return endpoint_values(m0, m1);
}

double rt_face_dof(const Vec3& a, const Vec3& b, const Vec3& c, const VectorField& p) {
  const TriangleRule& r = triangle_rule(kFaceDegree);
  const Vec3 n = (b - a).cross(c - a);
  double s = 0.0;
  for (size_t i = 0; i < r.points.size(); ++i)
    s += r.weights[i] * p(a + r.points[i][0] * (b - a) + r.points[i][1] * (c - a)).dot(n);
  return 2.0 * s;
}

void interpolate_u(const Mesh& mesh, const DofMap& dm, const VectorField& u, Eigen::VectorXd& x) {
  if (x.size() != dm.total) x = Eigen::VectorXd::Zero(dm.total);
  for (int node = 0; node < dm.num_u_nodes; ++node) {
    const Vec3 val = u(u_node_position(mesh, node));
    for (int c = 0; c < 3; ++c) x[dm.u_dof(node, c)] = val[c];
  }
}

void interpolate_p(const Mesh& mesh, const DofMap& dm, const TensorField& p, Eigen::VectorXd& x) {
  if (x.size() != dm.total) x = Eigen::VectorXd::Zero(dm.total);
  const NedelecKind kind = nedelec_kind(dm.sequence);
  const LineRule& g = gauss_line(kEdgePoints);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Vec3& a = mesh.vertices[mesh.edges[e][0]];
    const Vec3 t = mesh.vertices[mesh.edges[e][1]] - a;
    Vec3 m0 = Vec3::Zero(), m1 = Vec3::Zero();
    for (size_t i = 0; i < g.points.size(); ++i) {
      const double mu = g.points[i];
      const Vec3 v = g.weights[i] * (p(a + mu * t) * t);
      m0 += (1.0 - mu) * v;
      m1 += mu * v;
    }
    for (int r = 0; r < 3; ++r) {
      if (kind == NedelecKind::I0) {
        x[dm.p_dof(e, 0, r)] = m0[r] + m1[r];
      } else {
        const auto ev = endpoint_values(m0[r], m1[r]);
        x[dm.p_dof(e, 0, r)] = ev[0];
        x[dm.p_dof(e, 1, r)] = ev[1];
      }
    }
  }
}

void interpolate_d(const Mesh& mesh, const DofMap& dm, const TensorField& d, Eigen::VectorXd& x) {
  if (dm.n_d == 0) throw InputError("interpolate_d needs a mixed dof map");
  if (x.size() != dm.total) x = Eigen::VectorXd::Zero(dm.total);
  const TriangleRule& r = triangle_rule(kFaceDegree);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const auto& fv = mesh.faces[f];
    const Vec3& a = mesh.vertices[fv[0]];
    const Vec3 ab = mesh.vertices[fv[1]] - a, ac = mesh.vertices[fv[2]] - a;
    const Vec3 n = ab.cross(ac);
    Vec3 s = Vec3::Zero();
    for (size_t i = 0; i < r.points.size(); ++i)
      s += r.weights[i] * (d(a + r.points[i][0] * ab + r.points[i][1] * ac) * n);
    for (int row = 0; row < 3; ++row) x[dm.d_dof(f, row)] = 2.0 * s[row];
  }
}

void discrete_gradient(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  if (out.size() != dm.total) out = Eigen::VectorXd::Zero(dm.total);
  const int nv = mesh.num_vertices();
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int a = mesh.edges[e][0], b = mesh.edges[e][1];
    for (int c = 0; c < 3; ++c) {
      const double ua = in[dm.u_dof(a, c)], ub = in[dm.u_dof(b, c)];
      if (dm.sequence == Sequence::linear) {
        out[dm.p_dof(e, 0, c)] = ub - ua;
      } else {
        const double um = in[dm.u_dof(nv + e, c)];
        out[dm.p_dof(e, 0, c)] = -3.0 * ua + 4.0 * um - ub;
        out[dm.p_dof(e, 1, c)] = ua - 4.0 * um + 3.0 * ub;
      }
    }
  }
}

void discrete_curl(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  if (dm.n_d == 0) throw InputError("discrete_curl needs a mixed dof map");
  if (out.size() != dm.total) out = Eigen::VectorXd::Zero(dm.total);
  auto edge_id = [&](int a, int b) {
    auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), std::array<int, 2>{a, b});
    return static_cast<int>(it - mesh.edges.begin());
  };
  auto moment = [&](int e, int r) {
    if (dm.nedelec_per_edge == 1) return in[dm.p_dof(e, 0, r)];
    return 0.5 * (in[dm.p_dof(e, 0, r)] + in[dm.p_dof(e, 1, r)]);
  };
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const auto& v = mesh.faces[f];
    const int eij = edge_id(v[0], v[1]), ejk = edge_id(v[1], v[2]), eik = edge_id(v[0], v[2]);
    // Stokes on the face, traversed i -> j -> k as induced by its normal.
    for (int r = 0; r < 3; ++r)
      out[dm.d_dof(f, r)] = 2.0 * (moment(eij, r) + moment(ejk, r) - moment(eik, r));
  }
}

void discrete_divergence(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  if (dm.n_d == 0) throw InputError("discrete_divergence needs a mixed dof map");
  if (out.size() != dm.total) out = Eigen::VectorXd::Zero(dm.total);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    const auto& tv = mesh.tets[t];
    const ElementGeometry g = element_geometry(mesh, t);
    Vec3 flux = Vec3::Zero();
    for (int f = 0; f < 4; ++f) {
      const auto& rf = kRefFaces[f];
      const int opposite = 6 - rf[0] - rf[1] - rf[2];
      const Vec3& a = mesh.vertices[tv[rf[0]]];
      const Vec3 n = (mesh.vertices[tv[rf[1]]] - a).cross(mesh.vertices[tv[rf[2]]] - a);
      const double sign = n.dot(a - mesh.vertices[tv[opposite]]) > 0.0 ? 1.0 : -1.0;
      for (int r = 0; r < 3; ++r) flux[r] += sign * 0.5 * in[dm.d_dof(mesh.tet_faces[t][f], r)];
    }
    for (int r = 0; r < 3; ++r) out[dm.q_dof(t, r)] = flux[r] / g.volume;
  }
}

}  // namespace rmm
