#include "rmm/fespace.hpp"

namespace rmm {

Vec3 reference_vertex(int i) {
  Vec3 v = Vec3::Zero();
  if (i > 0) v[i - 1] = 1.0;
  return v;
}

Vec3 reference_tangent(int e) {
  return reference_vertex(kRefEdges[e][1]) - reference_vertex(kRefEdges[e][0]);
}

Vec3 reference_normal(int f) {
  const auto& v = kRefFaces[f];
  const Vec3 a = reference_vertex(v[0]);
  return (reference_vertex(v[1]) - a).cross(reference_vertex(v[2]) - a);
}

ScalarBasis eval_lagrange(int order, const Vec3& pt) {
  const double x = pt[0], y = pt[1], z = pt[2];
  const double l0 = 1.0 - x - y - z;
  const std::array<double, 4> lam{l0, x, y, z};
  const std::array<Vec3, 4> dlam{Vec3(-1, -1, -1), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  ScalarBasis b;
  if (order == 1) {
    b.size = 4;
    for (int i = 0; i < 4; ++i) {
      b.value[i] = lam[i];
      b.grad[i] = dlam[i];
    }
    return b;
  }
  if (order != 2) throw InputError("Lagrange order must be 1 or 2");
  b.size = 10;
  // Vertex functions lam (2 lam - 1), edge functions 4 lam_a lam_b.
  for (int i = 0; i < 4; ++i) {
    b.value[i] = lam[i] * (2.0 * lam[i] - 1.0);
    b.grad[i] = (4.0 * lam[i] - 1.0) * dlam[i];
  }
  for (int e = 0; e < 6; ++e) {
    const int a = kRefEdges[e][0], c = kRefEdges[e][1];
    b.value[4 + e] = 4.0 * lam[a] * lam[c];
    b.grad[4 + e] = 4.0 * (lam[a] * dlam[c] + lam[c] * dlam[a]);
  }
  return b;
}

VectorBasis eval_nedelec(NedelecKind kind, const Vec3& pt) {
  const double x = pt[0], y = pt[1], z = pt[2];
  VectorBasis b;
  if (kind == NedelecKind::I0) {
    b.size = 6;
    b.value[0] = {1.0 - y - z, x, x};
    b.value[1] = {-y, x, 0.0};
    b.value[2] = {y, 1.0 - x - z, y};
    b.value[3] = {z, z, 1.0 - x - y};
    b.value[4] = {-z, 0.0, x};
    b.value[5] = {0.0, -z, y};
    b.curl[0] = {0.0, -2.0, 2.0};
    b.curl[1] = {0.0, 0.0, 2.0};
    b.curl[2] = {2.0, 0.0, -2.0};
    b.curl[3] = {-2.0, 2.0, 0.0};
    b.curl[4] = {0.0, -2.0, 0.0};
    b.curl[5] = {2.0, 0.0, 0.0};
    return b;
  }
  // Two functions per edge, dual to the tangential value at the edge's
  // first and second vertex.
  const double l0 = 1.0 - x - y - z;
  b.size = 12;
  b.value[0] = {l0, 0.0, 0.0};
  b.value[1] = {x, x, x};
  b.value[2] = {0.0, x, 0.0};
  b.value[3] = {-y, 0.0, 0.0};
  b.value[4] = {0.0, l0, 0.0};
  b.value[5] = {y, y, y};
  b.value[6] = {0.0, 0.0, l0};
  b.value[7] = {z, z, z};
  b.value[8] = {0.0, 0.0, x};
  b.value[9] = {-z, 0.0, 0.0};
  b.value[10] = {0.0, 0.0, y};
  b.value[11] = {0.0, -z, 0.0};
  b.curl[0] = {0.0, -1.0, 1.0};
  b.curl[1] = {0.0, -1.0, 1.0};
  b.curl[2] = {0.0, 0.0, 1.0};
  b.curl[3] = {0.0, 0.0, 1.0};
  b.curl[4] = {1.0, 0.0, -1.0};
  b.curl[5] = {1.0, 0.0, -1.0};
  b.curl[6] = {-1.0, 1.0, 0.0};
  b.curl[7] = {-1.0, 1.0, 0.0};
  b.curl[8] = {0.0, -1.0, 0.0};
  b.curl[9] = {0.0, -1.0, 0.0};
  b.curl[10] = {1.0, 0.0, 0.0};
  b.curl[11] = {1.0, 0.0, 0.0};
  return b;
}

VectorBasis eval_rt0(const Vec3& pt) {
  const double x = pt[0], y = pt[1], z = pt[2];
  VectorBasis b;
  b.size = 4;
  b.value[0] = {-x, -y, 1.0 - z};
  b.value[1] = {x, y - 1.0, z};
  b.value[2] = {x, y, z};
  b.value[3] = {1.0 - x, -y, -z};
  b.div[0] = -3.0;
  b.div[1] = 3.0;
  b.div[2] = 3.0;
  b.div[3] = -3.0;
  return b;
}

Vec3 piola_covariant(const ElementGeometry& g, const Vec3& v) { return g.inv_jt * v; }

Vec3 piola_contravariant(const ElementGeometry& g, const Vec3& v) { return (g.jacobian * v) / g.det_j; }

}  // namespace rmm
