#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>

#include "febem/mesh.hpp"

namespace febem {

/// Pointwise symmetric positive definite coefficient field.
struct Coefficient {
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> value;
  double ellipticity = 1.0;

  static Coefficient identity();
};

/// Continuous Lagrange space S^{k,1}(T_Omega), k in {1,2}.
/// Dof order: vertices first (mesh order), then edge midpoints (k=2) in
/// edge-creation order. The mesh must outlive the space.
struct FeSpace {
  const TriMesh* mesh = nullptr;
  int degree = 1;
  int num_dofs = 0;
  Eigen::Matrix<int, Eigen::Dynamic, 2> edges;      // k=2: sorted vertex pairs
  Eigen::Matrix<int, Eigen::Dynamic, 3> tri_edges;  // k=2: edge ids per triangle
  Eigen::Matrix<double, Eigen::Dynamic, 2> dof_coords;
  Eigen::VectorXi boundary_dofs;  // counterclockwise along Gamma

  int dofs_per_element() const { return degree == 1 ? 3 : 6; }
  void element_dofs(int t, int* out) const;
};

FeSpace build_fe_space(const TriMesh& mesh, int degree);

/// Reference shape values at (xi, eta); size 3 (k=1) or 6 (k=2).
Eigen::VectorXd fe_shape_values(int degree, double xi, double eta);

/// Reference shape gradients at (xi, eta); 2 x ndof.
Eigen::MatrixXd fe_shape_gradients(int degree, double xi, double eta);

/// Stiffness matrix of a(u,v) = <A grad u, grad v>_Omega. The quadrature
/// degree defaults to 2k (exact for constant coefficients).
Eigen::SparseMatrix<double> assemble_stiffness(const FeSpace& space,
                                               const Coefficient& coeff,
                                               int quad_degree = -1);

/// Load vector <f, v_i> by triangle-wise Gauss quadrature of the given degree.
Eigen::VectorXd assemble_domain_load(
    const FeSpace& space, const std::function<double(const Eigen::Vector2d&)>& f,
    int quad_degree);

/// Selection map from volume dofs onto the boundary trace dofs, ordered
/// counterclockwise along Gamma (k dofs per segment: start vertex, then the
/// segment midpoint for k=2).
struct TraceOperator {
  Eigen::VectorXi volume_dof;  // volume dof per trace dof

  int num_trace_dofs() const { return static_cast<int>(volume_dof.size()); }
  Eigen::VectorXd restrict_to_trace(const Eigen::VectorXd& full) const;
  void scatter_add(const Eigen::VectorXd& trace, Eigen::VectorXd& full) const;
};

/// Throws std::invalid_argument if bmesh was not induced by space's mesh.
TraceOperator trace_restriction(const FeSpace& space, const BoundaryMesh& bmesh);

}  // namespace febem
