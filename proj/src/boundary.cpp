#include "rmm/assembly.hpp"

#include <algorithm>

namespace rmm {

std::array<double, 2> consistent_coupling_values(Sequence sequence, std::span<const double> u) {
  if (sequence == Sequence::linear) {
    if (u.size() != 2) throw InputError("linear coupling needs 2 samples");
    return {u[1] - u[0], 0.0};
  }
  if (u.size() != 3) throw InputError("quadratic coupling needs 3 samples");
  // Derivative of the quadratic interpolant along mu in [0,1] at both ends.
  return {-3.0 * u[0] + 4.0 * u[1] - u[2], u[0] - 4.0 * u[1] + 3.0 * u[2]};
}

BoundaryData make_boundary_data(const Mesh& mesh, const DofMap& dm, const DirichletSpec& spec,
                                bool fix_d_on_boundary) {
  std::vector<std::pair<int, double>> fixed;
  auto on_region = [&](SideMask m) { return (m & spec.region) != 0; };
  auto u_at = [&](const Vec3& x) { return spec.u ? spec.u(x) : Vec3(Vec3::Zero()); };
  const int nv = mesh.num_vertices();
  const bool quad = dm.sequence == Sequence::quadratic;

  for (int v = 0; v < nv; ++v) {
    if (!on_region(mesh.vertex_sides[v])) continue;
    const Vec3 val = u_at(mesh.vertices[v]);
    for (int c = 0; c < 3; ++c) fixed.emplace_back(dm.u_dof(v, c), val[c]);
  }
  if (quad)
    for (int e = 0; e < mesh.num_edges(); ++e) {
      if (!on_region(mesh.edge_sides[e])) continue;
      const Vec3 val = u_at(u_node_position(mesh, nv + e));
      for (int c = 0; c < 3; ++c) fixed.emplace_back(dm.u_dof(nv + e, c), val[c]);
    }

  const NedelecKind kind = nedelec_kind(dm.sequence);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const bool on = on_region(mesh.edge_sides[e]);
    if (!on && !spec.fix_p_all) continue;
    const Vec3& a = mesh.vertices[mesh.edges[e][0]];
    const Vec3& b = mesh.vertices[mesh.edges[e][1]];
    for (int r = 0; r < 3; ++r) {
      std::array<double, 2> dofs{0.0, 0.0};
      if (!on || spec.fix_p_all) {
        // zero data
      } else if (spec.p_mode == PTrace::consistent) {
        if (quad) {
          const double s[3] = {u_at(a)[r], u_at(0.5 * (a + b))[r], u_at(b)[r]};
          dofs = consistent_coupling_values(dm.sequence, s);
        } else {
          const double s[2] = {u_at(a)[r], u_at(b)[r]};
          dofs = consistent_coupling_values(dm.sequence, s);
        }
      } else {
        if (!spec.P) throw InputError("interpolated P trace needs a tensor field");
        dofs = nedelec_edge_dofs(kind, a, b, [&](const Vec3& x) -> Vec3 { return spec.P(x).row(r).transpose(); });
      }
      for (int k = 0; k < dm.nedelec_per_edge; ++k) fixed.emplace_back(dm.p_dof(e, k, r), dofs[k]);
    }
  }

  if (fix_d_on_boundary && dm.n_d > 0)
    for (int f = 0; f < mesh.num_faces(); ++f)
      if (on_region(mesh.face_sides[f]))
        for (int r = 0; r < 3; ++r) fixed.emplace_back(dm.d_dof(f, r), 0.0);

  std::sort(fixed.begin(), fixed.end());
  BoundaryData bc;
  bc.region = spec.region;
  for (const auto& [dof, val] : fixed) {
    if (dof < 0 || dof >= dm.total) throw InputError("Dirichlet dof out of range");
    if (!bc.dofs.empty() && bc.dofs.back() == dof) continue;
    bc.dofs.push_back(dof);
    bc.values.push_back(val);
  }
  return bc;
}

}  // namespace rmm
