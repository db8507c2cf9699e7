#pragma once

#include "rmm/mesh.hpp"
#include "rmm/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace rmm {

// ---------------------------------------------------------------- quadrature

struct QuadratureRule {
  std::vector<Vec3> points;  // reference coordinates (xi, eta, zeta)
  std::vector<double> weights;
  int degree = 0;
};

// Rule on the reference tet exact for total degree <= `degree` (1..20).
// Conical product of Gauss-Jacobi rules; weights are positive.
const QuadratureRule& quadrature(int degree);

// Gauss-Legendre on [0,1].
struct LineRule {
  std::vector<double> points, weights;
};
const LineRule& gauss_line(int npoints);

// Collapsed product rule on the reference triangle {s,t >= 0, s+t <= 1}
// exact to `degree`; weights sum to 1/2.
struct TriangleRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
};
const TriangleRule& triangle_rule(int degree);

// ------------------------------------------------------------ reference bases

enum class NedelecKind { I0, II1 };

struct ScalarBasis {
  int size = 0;
  std::array<double, 10> value{};
  std::array<Vec3, 10> grad{};  // reference gradients
};

struct VectorBasis {
  int size = 0;
  std::array<Vec3, 12> value{};
  std::array<Vec3, 12> curl{};   // Nedelec only
  std::array<double, 12> div{};  // Raviart-Thomas only
};

ScalarBasis eval_lagrange(int order, const Vec3& pt);
VectorBasis eval_nedelec(NedelecKind kind, const Vec3& pt);
VectorBasis eval_rt0(const Vec3& pt);

inline NedelecKind nedelec_kind(Sequence s) {
  return s == Sequence::linear ? NedelecKind::I0 : NedelecKind::II1;
}

Vec3 reference_vertex(int i);
// Edge direction xi_{v2} - xi_{v1} of reference edge e.
Vec3 reference_tangent(int e);
// Face normal (xi_j - xi_i) x (xi_k - xi_i) of reference face f.
Vec3 reference_normal(int f);

Vec3 piola_covariant(const ElementGeometry& g, const Vec3& v);
Vec3 piola_contravariant(const ElementGeometry& g, const Vec3& v);

// --------------------------------------------------------------------- dofs

struct DofMap {
  Sequence sequence = Sequence::linear;
  Formulation formulation = Formulation::primal;

  int num_u_nodes = 0;       // vertices, plus edge midpoints for P2
  int nedelec_per_edge = 1;  // 1 (I0) or 2 (II1)

  int n_u = 0, n_p = 0, n_d = 0, n_q = 0, n_mean = 0;
  int off_u = 0, off_p = 0, off_d = 0, off_q = 0, off_mean = 0;
  int total = 0;

  // Element layout: [u: 3 per node | P: 3 per Nedelec function | D: 3 per
  // face | q: 3]. Within each block the row/component index runs fastest.
  int local_u = 0, local_p = 0, local_d = 0, local_q = 0;
  int local_size = 0;
  std::vector<int> scatter;  // num_tets * local_size

  std::span<const int> element(int t) const {
    return {scatter.data() + static_cast<size_t>(t) * local_size, static_cast<size_t>(local_size)};
  }

  int u_dof(int node, int comp) const { return off_u + 3 * node + comp; }
  int p_dof(int edge, int k, int row) const { return off_p + 3 * (edge * nedelec_per_edge + k) + row; }
  int d_dof(int face, int row) const { return off_d + 3 * face + row; }
  int q_dof(int tet, int comp) const { return off_q + 3 * tet + comp; }
  int mean_dof(int comp) const { return off_mean + comp; }
};

DofMap build_dofmap(const Mesh& mesh, Sequence sequence, Formulation formulation);

// Physical position of u-node `node` (vertex or edge midpoint).
Vec3 u_node_position(const Mesh& mesh, int node);

// ----------------------------------------------------------- interpolation

// Nedelec edge degrees of freedom of a vector field p on the segment a -> b.
// I0: the tangential moment int_0^1 <p, b-a> dmu. II1: the L2 projection of
// <p, b-a> onto linear functions along the edge, returned as its values at a
// and b. Exact for polynomial traces up to the quadrature order used.
std::array<double, 2> nedelec_edge_dofs(NedelecKind kind, const Vec3& a, const Vec3& b,
                                        const VectorField& p);

// Raviart-Thomas face degree of freedom: 2 int <p, (b-a) x (c-a)> over the
// parameter triangle, i.e. the flux through the face scaled so that the
// reference basis is dual to it.
double rt_face_dof(const Vec3& a, const Vec3& b, const Vec3& c, const VectorField& p);

// Canonical interpolants writing into the matching block of a global vector
// of size dofmap.total. Tensor fields act row-wise.
void interpolate_u(const Mesh& mesh, const DofMap& dm, const VectorField& u, Eigen::VectorXd& x);
void interpolate_p(const Mesh& mesh, const DofMap& dm, const TensorField& p, Eigen::VectorXd& x);
void interpolate_d(const Mesh& mesh, const DofMap& dm, const TensorField& d, Eigen::VectorXd& x);

// Discrete differential operators between coefficient blocks (global x).
// grad: u-block -> P-block of D(u_h); curl: P-block -> D-block of Curl(P_h);
// div: D-block -> q-block of Div(D_h).
void discrete_gradient(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out);
void discrete_curl(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out);
void discrete_divergence(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& in, Eigen::VectorXd& out);

}  // namespace rmm
