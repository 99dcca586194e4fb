#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "febem/bem.hpp"
#include "febem/fe_space.hpp"
#include "febem/mesh.hpp"

namespace febem {

/// Per-level error quantities of the convergence study.
struct ErrorReport {
  int level = 0;
  double h = 0.0;
  int ndof_fem = 0;
  int ndof_bem = 0;
  double err_h1 = 0.0;    // |u - u_h|_{H1(Omega)}
  double err_l2 = 0.0;    // ||u - u_h||_{L2(Omega)}
  double err_strip = 0.0; // ||u - u_h||_{L2(S_h)}
  double err_flux = 0.0;  // ||h^{1/2}(phi - phi_h)||_{L2(Gamma)}
};

/// Observed convergence orders between consecutive levels,
/// eoc = log(e_l / e_{l+1}) / log(h_l / h_{l+1}); NaN where undefined.
struct EocRow {
  int level_from = 0;
  int level_to = 0;
  double eoc_h1, eoc_l2, eoc_strip, eoc_flux;
};
struct EocTable {
  std::vector<EocRow> rows;
};

using ScalarField = std::function<double(const Eigen::Vector2d&)>;
using GradField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// |u - u_h|_{H1}: triangle-wise Gauss quadrature of |grad u - grad u_h|^2.
double error_h1_semi(const FeSpace& space, const Eigen::VectorXd& u_h,
                     const GradField& exact_grad, int quad_degree = 10);

double error_l2(const FeSpace& space, const Eigen::VectorXd& u_h,
                const ScalarField& exact, int quad_degree = 10);

/// L2 error restricted to the elements of the strip.
double error_l2_strip(const FeSpace& space, const Eigen::VectorXd& u_h,
                      const ScalarField& exact, const ElementSet& strip,
                      int quad_degree = 10);

/// h^{1/2} * ||phi - phi_h||_{L2(Gamma)} with the declared mesh size h.
double error_flux_weighted(const BoundaryMesh& bmesh, const BemSpace& space,
                           const Eigen::VectorXd& phi_h, const FluxFn& exact_flux,
                           double h, int quad_order = 16);

/// Requires >= 2 reports; entries with nonpositive errors yield NaN.
EocTable eoc(const std::vector<ErrorReport>& reports);

/// Volume seminorm sqrt(int_Omega w(x) dx) for a pointwise squared-density w
/// (used for the |u|_{H^m} magnitude checks).
double volume_seminorm(const TriMesh& mesh, const ScalarField& density_sq,
                       int quad_degree = 10);

/// Boundary seminorm sqrt(sum_segments int (d phi/ds)^2 ds) for a tangential
/// derivative supplied per segment.
double boundary_h1_seminorm(
    const BoundaryMesh& bmesh,
    const std::function<double(const Eigen::Vector2d&, const Eigen::Vector2d&,
                               const Eigen::Vector2d&)>& dphi_ds,
    int quad_order = 32);

}  // namespace febem
