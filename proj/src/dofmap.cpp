#include "rmm/fespace.hpp"

namespace rmm {

std::string to_string(Sequence s) { return s == Sequence::linear ? "linear" : "quadratic"; }
std::string to_string(Formulation f) { return f == Formulation::primal ? "primal" : "mixed"; }

Sequence parse_sequence(const std::string& s) {
  if (s == "linear") return Sequence::linear;
  if (s == "quadratic") return Sequence::quadratic;
  throw InputError("unknown sequence '" + s + "' (expected linear|quadratic)");
}

Formulation parse_formulation(const std::string& s) {
  if (s == "primal") return Formulation::primal;
  if (s == "mixed") return Formulation::mixed;
  throw InputError("unknown formulation '" + s + "' (expected primal|mixed)");
}

DofMap build_dofmap(const Mesh& mesh, Sequence sequence, Formulation formulation) {
  DofMap dm;
  dm.sequence = sequence;
  dm.formulation = formulation;
  const bool quad = sequence == Sequence::quadratic;
  const bool mixed = formulation == Formulation::mixed;

  dm.num_u_nodes = mesh.num_vertices() + (quad ? mesh.num_edges() : 0);
  dm.nedelec_per_edge = quad ? 2 : 1;
  dm.n_u = 3 * dm.num_u_nodes;
  dm.n_p = 3 * dm.nedelec_per_edge * mesh.num_edges();
  dm.n_d = mixed ? 3 * mesh.num_faces() : 0;
  dm.n_q = mixed ? 3 * mesh.num_tets() : 0;
  dm.n_mean = mixed ? 3 : 0;
  dm.off_u = 0;
  dm.off_p = dm.off_u + dm.n_u;
  dm.off_d = dm.off_p + dm.n_p;
  dm.off_q = dm.off_d + dm.n_d;
  dm.off_mean = dm.off_q + dm.n_q;
  dm.total = dm.off_mean + dm.n_mean;

  dm.local_u = 3 * (quad ? 10 : 4);
  dm.local_p = 3 * (quad ? 12 : 6);
  dm.local_d = mixed ? 12 : 0;
  dm.local_q = mixed ? 3 : 0;
  dm.local_size = dm.local_u + dm.local_p + dm.local_d + dm.local_q;

  dm.scatter.resize(static_cast<size_t>(mesh.num_tets()) * dm.local_size);
  for (int t = 0; t < mesh.num_tets(); ++t) {
    int* s = dm.scatter.data() + static_cast<size_t>(t) * dm.local_size;
    const auto& tv = mesh.tets[t];
    const auto& te = mesh.tet_edges[t];
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 3; ++c) *s++ = dm.u_dof(tv[i], c);
    if (quad)
      for (int e = 0; e < 6; ++e)
        for (int c = 0; c < 3; ++c) *s++ = dm.u_dof(mesh.num_vertices() + te[e], c);
    for (int e = 0; e < 6; ++e)
      for (int k = 0; k < dm.nedelec_per_edge; ++k)
        for (int r = 0; r < 3; ++r) *s++ = dm.p_dof(te[e], k, r);
    if (mixed) {
      for (int f = 0; f < 4; ++f)
        for (int r = 0; r < 3; ++r) *s++ = dm.d_dof(mesh.tet_faces[t][f], r);
      for (int c = 0; c < 3; ++c) *s++ = dm.q_dof(t, c);
    }
  }
  return dm;
}

Vec3 u_node_position(const Mesh& mesh, int node) {
  if (node < mesh.num_vertices()) return mesh.vertices[node];
  const auto& e = mesh.edges[node - mesh.num_vertices()];
  return 0.5 * (mesh.vertices[e[0]] + mesh.vertices[e[1]]);
}

}  // namespace rmm
