#pragma once

#include "rmm/types.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rmm {

// Reference tetrahedron numbering. Local vertices 0..3 are (0,0,0), (1,0,0),
// (0,1,0), (0,0,1). Edges follow the order used by the P2 and Nedelec bases:
// (0,1), (1,2), (0,2), (0,3), (1,3), (2,3). Face i lists its vertices ascending.
inline constexpr std::array<std::array<int, 2>, 6> kRefEdges{
    {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}};
inline constexpr std::array<std::array<int, 3>, 4> kRefFaces{
    {{0, 1, 2}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}}};

enum class Side : std::uint8_t { xmin, xmax, ymin, ymax, zmin, zmax, untagged };

using SideMask = std::uint8_t;
inline constexpr SideMask side_bit(Side s) {
  return s == Side::untagged ? SideMask(0x40) : SideMask(1u << static_cast<int>(s));
}
inline constexpr SideMask kAllSides = 0x7f;

std::string to_string(Side s);
Side parse_side(const std::string& s);

struct BoundaryFace {
  int face;
  Side side;
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;   // strictly increasing
  std::vector<std::array<int, 2>> edges;  // lexicographic
  std::vector<std::array<int, 3>> faces;  // lexicographic
  std::vector<std::array<int, 6>> tet_edges;  // indexed like kRefEdges
  std::vector<std::array<int, 4>> tet_faces;  // indexed like kRefFaces
  std::vector<BoundaryFace> boundary_faces;

  // Per-entity union of the sides of the boundary faces touching it.
  std::vector<SideMask> vertex_sides, edge_sides, face_sides;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  int num_tets() const { return static_cast<int>(tets.size()); }
};

struct ElementGeometry {
  Vec3 origin;  // first vertex
  Mat3 jacobian;
  double det_j;
  Mat3 inv_jt;
  double volume;

  Vec3 map(const Vec3& ref) const { return origin + jacobian * ref; }
};

Mesh generate_box_mesh(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi);
Mesh generate_cube_mesh(int n, const Vec3& lo, const Vec3& hi);

// Builds edges, faces, incidence and boundary tags. Boundary faces lying on
// a plane of the vertex bounding box get that side, others are untagged.
Mesh enumerate_entities(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets);

ElementGeometry element_geometry(const Mesh& mesh, int t);

Mesh read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);
void write_mesh_file(const std::string& path, const Mesh& mesh);

}  // namespace rmm
