#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

namespace febem {

/// Conforming affine triangulation with counterclockwise triangles.
///
/// The L-shape family starts from the canonical 12-triangle layout of
/// Omega = (-0.2,0.2)x(0,0.4) \ [-0.2,0]x[0,0.2] (three 0.2x0.2 squares,
/// each split into four triangles through its center; see build_lshape)
/// and is refined uniformly, so that at refinement level l it has
/// 12*4^l triangles and mesh size h = 0.2*2^-l.
struct TriMesh {
  Eigen::Matrix<double, Eigen::Dynamic, 2> vertices;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;
  int level = 0;
  double mesh_size = 0.0;  // longest edge, maintained exactly as 0.2*2^-level

  int num_vertices() const { return static_cast<int>(vertices.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.rows()); }
};

/// Closed boundary polyline induced by a TriMesh (T_Gamma = T_Omega|_Gamma).
/// Segments trace Gamma counterclockwise; normals point into the exterior.
struct BoundaryMesh {
  Eigen::Matrix<int, Eigen::Dynamic, 2> segments;     // vertex index pairs
  Eigen::Matrix<double, Eigen::Dynamic, 2> normals;   // unit, outward
  Eigen::Matrix<int, Eigen::Dynamic, 2> parent_edge;  // (triangle, local edge)
  std::vector<bool> corner;  // start vertex of segment i is a polygon corner

  // segment geometry, copied from the parent mesh
  Eigen::Matrix<double, Eigen::Dynamic, 2> a;  // segment start points
  Eigen::Matrix<double, Eigen::Dynamic, 2> b;  // segment end points
  Eigen::VectorXd length;

  int num_segments() const { return static_cast<int>(segments.rows()); }
  double total_length() const { return length.sum(); }
};

/// Subset of mesh elements with a role tag (e.g. the boundary strip S_h).
struct ElementSet {
  std::vector<int> elements;
  std::string role;
};

/// Canonical L-shape triangulation at the given refinement level.
/// Level 0 has 11 vertices, 12 triangles and 8 boundary segments; the
/// vertex ordering is fixed (corners of the three squares first, then the
/// three square centers) and documented in the README.
TriMesh build_lshape(int level);

/// Uniform red refinement: every triangle is split into four congruent
/// children through its edge midpoints. Children of triangle t are stored
/// at indices 4t..4t+3. Midpoint vertices are deduplicated through the
/// shared-edge table, so no coordinate tolerance is involved.
TriMesh red_refine(const TriMesh& mesh);

/// Extracts the induced boundary mesh as a single closed counterclockwise
/// loop. Throws std::runtime_error if the boundary is not a single loop.
BoundaryMesh extract_boundary(const TriMesh& mesh);

/// Elements whose closure touches Gamma, i.e. triangles with at least one
/// vertex on the boundary (for induced boundary meshes the two notions
/// coincide).
ElementSet boundary_strip(const TriMesh& mesh);

double total_area(const TriMesh& mesh);
double max_edge_length(const TriMesh& mesh);
double min_triangle_diameter(const TriMesh& mesh);

/// Diameter of the polygon traced by the boundary loop (max vertex distance).
double polygon_diameter(const BoundaryMesh& bmesh);

/// Plain-text dump: one "v x y" line per vertex, one "t i j k" line per
/// triangle (0-based indices).
void write_mesh(const TriMesh& mesh, std::ostream& out);

}  // namespace febem
