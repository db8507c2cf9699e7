#include "rmm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace rmm {

std::string to_string(Side s) {
  switch (s) {
    case Side::xmin: return "xmin";
    case Side::xmax: return "xmax";
    case Side::ymin: return "ymin";
    case Side::ymax: return "ymax";
    case Side::zmin: return "zmin";
    case Side::zmax: return "zmax";
    case Side::untagged: return "untagged";
  }
  return "untagged";
}

Side parse_side(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Side::untagged); ++i)
    if (to_string(static_cast<Side>(i)) == s) return static_cast<Side>(i);
  throw InputError("unknown box side '" + s + "'");
}

Mesh generate_box_mesh(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi) {
  if (nx < 1 || ny < 1 || nz < 1) throw InputError("mesh subdivisions must be >= 1");
  if (!(lo.array() < hi.array()).all()) throw InputError("degenerate box: need lo < hi componentwise");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<size_t>(nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        // Endpoints are set exactly so box-side tagging sees clean planes.
        auto coord = [](double a, double b, int m, int n) {
          return m == n ? b : a + (b - a) * static_cast<double>(m) / n;
        };
        vertices.emplace_back(coord(lo.x(), hi.x(), i, nx), coord(lo.y(), hi.y(), j, ny),
                              coord(lo.z(), hi.z(), k, nz));
      }

  const int sx = 1, sy = nx + 1, sz = (nx + 1) * (ny + 1);
  const std::array<int, 3> stride{sx, sy, sz};
  // Kuhn split: one tet per axis permutation, walking 000 -> 111. Strides are
  // positive so the walk is already ascending in global index.
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<int, 4>> tets;
  tets.reserve(static_cast<size_t>(6) * nx * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int base = i * sx + j * sy + k * sz;
        for (const auto& p : perms) {
          std::array<int, 4> t{base, 0, 0, 0};
          for (int s = 0; s < 3; ++s) t[s + 1] = t[s] + stride[p[s]];
          tets.push_back(t);
        }
      }
  return enumerate_entities(std::move(vertices), std::move(tets));
}

Mesh generate_cube_mesh(int n, const Vec3& lo, const Vec3& hi) {
  return generate_box_mesh(n, n, n, lo, hi);
}

namespace {

template <size_t N>
int find_sorted(const std::vector<std::array<int, N>>& list, const std::array<int, N>& key) {
  auto it = std::lower_bound(list.begin(), list.end(), key);
  return static_cast<int>(it - list.begin());
}

}  // namespace

Mesh enumerate_entities(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets) {
  const int nv = static_cast<int>(vertices.size());
  for (const auto& t : tets) {
    for (int a = 0; a < 4; ++a) {
      if (t[a] < 0 || t[a] >= nv) throw InputError("tet vertex index out of range");
      if (a > 0 && t[a] == t[a - 1]) throw InputError("tet with repeated vertex");
      if (a > 0 && t[a] < t[a - 1]) throw InputError("tet vertex tuple not ascending");
    }
  }
  {
    auto sorted = tets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("duplicate tet");
  }

  Mesh m;
  m.vertices = std::move(vertices);
  m.tets = std::move(tets);

  m.edges.reserve(m.tets.size() * 6);
  m.faces.reserve(m.tets.size() * 4);
  for (const auto& t : m.tets) {
    for (const auto& e : kRefEdges) m.edges.push_back({t[e[0]], t[e[1]]});
    for (const auto& f : kRefFaces) m.faces.push_back({t[f[0]], t[f[1]], t[f[2]]});
  }
  std::sort(m.edges.begin(), m.edges.end());
  m.edges.erase(std::unique(m.edges.begin(), m.edges.end()), m.edges.end());
  std::sort(m.faces.begin(), m.faces.end());
  m.faces.erase(std::unique(m.faces.begin(), m.faces.end()), m.faces.end());

  m.tet_edges.resize(m.tets.size());
  m.tet_faces.resize(m.tets.size());
  std::vector<int> face_count(m.faces.size(), 0);
  for (size_t i = 0; i < m.tets.size(); ++i) {
    const auto& t = m.tets[i];
    for (int e = 0; e < 6; ++e)
      m.tet_edges[i][e] = find_sorted(m.edges, {t[kRefEdges[e][0]], t[kRefEdges[e][1]]});
    for (int f = 0; f < 4; ++f) {
      const int id = find_sorted(m.faces, {t[kRefFaces[f][0]], t[kRefFaces[f][1]], t[kRefFaces[f][2]]});
      m.tet_faces[i][f] = id;
      if (++face_count[id] > 2) throw InputError("face shared by more than two tets");
    }
  }

  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = -lo;
  for (const auto& v : m.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double tol = 1e-10 * (m.vertices.empty() ? 1.0 : (hi - lo).maxCoeff());

  m.vertex_sides.assign(m.vertices.size(), 0);
  m.edge_sides.assign(m.edges.size(), 0);
  m.face_sides.assign(m.faces.size(), 0);
  for (size_t f = 0; f < m.faces.size(); ++f) {
    if (face_count[f] != 1) continue;
    const auto& fv = m.faces[f];
    Side side = Side::untagged;
    for (int axis = 0; axis < 3 && side == Side::untagged; ++axis) {
      for (int end = 0; end < 2; ++end) {
        const double plane = end == 0 ? lo[axis] : hi[axis];
        bool on = true;
        for (int v : fv) on = on && std::abs(m.vertices[v][axis] - plane) <= tol;
        if (on) {
          side = static_cast<Side>(2 * axis + end);
          break;
        }
      }
    }
    m.boundary_faces.push_back({static_cast<int>(f), side});
    m.face_sides[f] |= side_bit(side);
  }

  const SideMask none = 0;
  for (size_t i = 0; i < m.tets.size(); ++i) {
    for (int f = 0; f < 4; ++f) {
      const int id = m.tet_faces[i][f];
      const SideMask s = m.face_sides[id];
      if (s == none) continue;
      const auto& rf = kRefFaces[f];
      for (int a = 0; a < 3; ++a) m.vertex_sides[m.tets[i][rf[a]]] |= s;
      for (int e = 0; e < 6; ++e) {
        const auto& re = kRefEdges[e];
        const bool in_face = std::count(rf.begin(), rf.end(), re[0]) && std::count(rf.begin(), rf.end(), re[1]);
        if (in_face) m.edge_sides[m.tet_edges[i][e]] |= s;
      }
    }
  }
  return m;
}

ElementGeometry element_geometry(const Mesh& mesh, int t) {
  if (t < 0 || t >= mesh.num_tets()) throw InputError("tet index out of range");
  const auto& tv = mesh.tets[t];
  ElementGeometry g;
  g.origin = mesh.vertices[tv[0]];
  double len = 0.0;
  for (int c = 0; c < 3; ++c) {
    g.jacobian.col(c) = mesh.vertices[tv[c + 1]] - g.origin;
    len = std::max(len, g.jacobian.col(c).norm());
  }
  g.det_j = g.jacobian.determinant();
  if (!(std::abs(g.det_j) >= 1e-14 * len * len * len))
    throw NumericalError("degenerate tetrahedron " + std::to_string(t));
  g.inv_jt = g.jacobian.inverse().transpose();
  g.volume = std::abs(g.det_j) / 6.0;
  return g;
}

Mesh read_mesh(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("tetmesh 1", 0) != 0)
    throw InputError("mesh: expected header 'tetmesh 1'");
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 x;
      if (!(ls >> x[0] >> x[1] >> x[2])) throw InputError("mesh: bad vertex on line " + std::to_string(lineno));
      vertices.push_back(x);
    } else if (tag == "t") {
      std::array<int, 4> t;
      if (!(ls >> t[0] >> t[1] >> t[2] >> t[3])) throw InputError("mesh: bad tet on line " + std::to_string(lineno));
      std::sort(t.begin(), t.end());
      tets.push_back(t);
    } else {
      throw InputError("mesh: unknown record '" + tag + "' on line " + std::to_string(lineno));
    }
  }
  return enumerate_entities(std::move(vertices), std::move(tets));
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "tetmesh 1\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : mesh.tets) out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file '" + path + "'");
  write_mesh(out, mesh);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace rmm
