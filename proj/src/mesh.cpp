#include "febem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace febem {

namespace {

double signed_area(const TriMesh& mesh, int t) {
  const auto& v = mesh.vertices;
  const auto& tri = mesh.triangles;
  const Eigen::Vector2d p0 = v.row(tri(t, 0));
  const Eigen::Vector2d p1 = v.row(tri(t, 1));
  const Eigen::Vector2d p2 = v.row(tri(t, 2));
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

struct PairHash {
  size_t operator()(const std::pair<int, int>& p) const {
    return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ p.second);
  }
};

// boundary edges (appearing in exactly one triangle), oriented as traversed
// by their owning triangle, together with (triangle, local edge)
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>
oriented_boundary_edges(const TriMesh& mesh) {
  std::unordered_map<std::pair<int, int>, int, PairHash> count;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const int u = mesh.triangles(t, e);
      const int w = mesh.triangles(t, (e + 1) % 3);
      ++count[{std::min(u, w), std::max(u, w)}];
    }
  }
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const int u = mesh.triangles(t, e);
      const int w = mesh.triangles(t, (e + 1) % 3);
      if (count.at({std::min(u, w), std::max(u, w)}) == 1)
        out.push_back({{u, w}, {t, e}});
    }
  }
  return out;
}

}  // namespace

TriMesh build_lshape(int level) {
  if (level < 0) throw std::invalid_argument("build_lshape: level must be >= 0");
  TriMesh mesh;
  mesh.vertices.resize(11, 2);
  mesh.vertices << 0.0, 0.0,    // 0: bottom-left corner (singular corner)
      0.2, 0.0,                 // 1
      0.2, 0.2,                 // 2
      0.0, 0.2,                 // 3: reentrant corner
      0.2, 0.4,                 // 4
      0.0, 0.4,                 // 5
      -0.2, 0.4,                // 6
      -0.2, 0.2,                // 7
      0.1, 0.1,                 // 8: center of square (0,0.2)^2
      0.1, 0.3,                 // 9: center of square (0,0.2)x(0.2,0.4)
      -0.1, 0.3;                // 10: center of square (-0.2,0)x(0.2,0.4)
  mesh.triangles.resize(12, 3);
  mesh.triangles << 0, 1, 8, 1, 2, 8, 2, 3, 8, 3, 0, 8,   // square A
      3, 2, 9, 2, 4, 9, 4, 5, 9, 5, 3, 9,                 // square B
      7, 3, 10, 3, 5, 10, 5, 6, 10, 6, 7, 10;             // square C
  mesh.level = 0;
  mesh.mesh_size = 0.2;
  for (int l = 0; l < level; ++l) mesh = red_refine(mesh);
  return mesh;
}

TriMesh red_refine(const TriMesh& mesh) {
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();
  std::unordered_map<std::pair<int, int>, int, PairHash> midpoint;
  std::vector<Eigen::Vector2d> new_vertices;
  auto mid = [&](int u, int w) {
    const std::pair<int, int> key{std::min(u, w), std::max(u, w)};
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = nv + static_cast<int>(new_vertices.size());
    new_vertices.emplace_back(0.5 * (mesh.vertices.row(u) + mesh.vertices.row(w)));
    midpoint.emplace(key, id);
    return id;
  };

  TriMesh fine;
  fine.triangles.resize(4 * nt, 3);
  for (int t = 0; t < nt; ++t) {
    const int a = mesh.triangles(t, 0);
    const int b = mesh.triangles(t, 1);
    const int c = mesh.triangles(t, 2);
    const int ab = mid(a, b);
    const int bc = mid(b, c);
    const int ca = mid(c, a);
    fine.triangles.row(4 * t + 0) << a, ab, ca;
    fine.triangles.row(4 * t + 1) << ab, b, bc;
    fine.triangles.row(4 * t + 2) << ca, bc, c;
    fine.triangles.row(4 * t + 3) << ab, bc, ca;
  }
  fine.vertices.resize(nv + static_cast<int>(new_vertices.size()), 2);
  fine.vertices.topRows(nv) = mesh.vertices;
  for (size_t i = 0; i < new_vertices.size(); ++i)
    fine.vertices.row(nv + static_cast<int>(i)) = new_vertices[i];
  fine.level = mesh.level + 1;
  fine.mesh_size = 0.5 * mesh.mesh_size;
  return fine;
}

BoundaryMesh extract_boundary(const TriMesh& mesh) {
  const auto bedges = oriented_boundary_edges(mesh);
  if (bedges.empty()) throw std::runtime_error("extract_boundary: no boundary edges");

  std::unordered_map<int, size_t> next_of;  // start vertex -> edge position
  for (size_t i = 0; i < bedges.size(); ++i) {
    if (!next_of.emplace(bedges[i].first.first, i).second)
      throw std::runtime_error("extract_boundary: boundary is not a manifold loop");
  }

  // start at the boundary vertex with lexicographically smallest (y, x)
  int start = bedges[0].first.first;
  for (const auto& be : bedges) {
    const int v = be.first.first;
    const auto yx = [&](int i) {
      return std::make_pair(mesh.vertices(i, 1), mesh.vertices(i, 0));
    };
    if (yx(v) < yx(start)) start = v;
  }

  std::vector<size_t> order;
  int v = start;
  do {
    auto it = next_of.find(v);
    if (it == next_of.end())
      throw std::runtime_error("extract_boundary: boundary loop is not closed");
    order.push_back(it->second);
    v = bedges[it->second].first.second;
  } while (v != start && order.size() <= bedges.size());
  if (order.size() != bedges.size())
    throw std::runtime_error("extract_boundary: boundary is not a single loop");

  const int ns = static_cast<int>(order.size());
  BoundaryMesh bm;
  bm.segments.resize(ns, 2);
  bm.normals.resize(ns, 2);
  bm.parent_edge.resize(ns, 2);
  bm.a.resize(ns, 2);
  bm.b.resize(ns, 2);
  bm.length.resize(ns);
  bm.corner.resize(ns);
  for (int i = 0; i < ns; ++i) {
    const auto& [edge, parent] = bedges[order[i]];
    bm.segments.row(i) << edge.first, edge.second;
    bm.parent_edge.row(i) << parent.first, parent.second;
    bm.a.row(i) = mesh.vertices.row(edge.first);
    bm.b.row(i) = mesh.vertices.row(edge.second);
    const Eigen::Vector2d d = bm.b.row(i) - bm.a.row(i);
    bm.length[i] = d.norm();
    if (bm.length[i] <= 0.0)
      throw std::runtime_error("extract_boundary: degenerate boundary segment");
    bm.normals.row(i) << d.y() / bm.length[i], -d.x() / bm.length[i];
  }
  for (int i = 0; i < ns; ++i) {
    const int prev = (i + ns - 1) % ns;
    bm.corner[i] = (bm.normals.row(i) - bm.normals.row(prev)).norm() > 1e-12;
  }
  return bm;
}

ElementSet boundary_strip(const TriMesh& mesh) {
  const auto bedges = oriented_boundary_edges(mesh);
  std::vector<bool> on_boundary(mesh.num_vertices(), false);
  for (const auto& be : bedges) {
    on_boundary[be.first.first] = true;
    on_boundary[be.first.second] = true;
  }
  ElementSet strip;
  strip.role = "boundary strip S_h";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (on_boundary[mesh.triangles(t, 0)] || on_boundary[mesh.triangles(t, 1)] ||
        on_boundary[mesh.triangles(t, 2)])
      strip.elements.push_back(t);
  }
  return strip;
}

double total_area(const TriMesh& mesh) {
  double area = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double s = signed_area(mesh, t);
    if (s <= 0.0) throw std::runtime_error("total_area: non-positive triangle");
    area += s;
  }
  return area;
}

double max_edge_length(const TriMesh& mesh) {
  double len = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector2d d = mesh.vertices.row(mesh.triangles(t, (e + 1) % 3)) -
                                mesh.vertices.row(mesh.triangles(t, e));
      len = std::max(len, d.norm());
    }
  }
  return len;
}

double min_triangle_diameter(const TriMesh& mesh) {
  double len = std::numeric_limits<double>::max();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    double d = 0.0;
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector2d dv = mesh.vertices.row(mesh.triangles(t, (e + 1) % 3)) -
                                 mesh.vertices.row(mesh.triangles(t, e));
      d = std::max(d, dv.norm());
    }
    len = std::min(len, d);
  }
  return len;
}

double polygon_diameter(const BoundaryMesh& bmesh) {
  double diam = 0.0;
  for (int i = 0; i < bmesh.num_segments(); ++i)
    for (int j = i + 1; j < bmesh.num_segments(); ++j)
      diam = std::max(diam, (bmesh.a.row(i) - bmesh.a.row(j)).norm());
  return diam;
}

void write_mesh(const TriMesh& mesh, std::ostream& out) {
  char buf[128];
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", mesh.vertices(i, 0),
                  mesh.vertices(i, 1));
    out << buf;
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    std::snprintf(buf, sizeof buf, "t %d %d %d\n", mesh.triangles(t, 0),
                  mesh.triangles(t, 1), mesh.triangles(t, 2));
    out << buf;
  }
}

}  // namespace febem
