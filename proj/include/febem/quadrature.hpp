#pragma once

#include <Eigen/Core>
#include <functional>

namespace febem {

/// Quadrature rule on the reference interval [0,1].
struct QuadratureRule1D {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [0,1], exact for polynomials of degree 2n-1.
/// Nodes and weights come from the eigen-decomposition of the Jacobi matrix
/// (Golub-Welsch), so no hard-coded tables are needed.
QuadratureRule1D gauss_legendre(int n);

/// Quadrature rule on the reference triangle {xi,eta >= 0, xi+eta <= 1}.
/// Weights sum to 1/2.
struct TriangleRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Tensor Gauss rule collapsed onto the triangle (Duffy transform),
/// exact for total degree <= degree.
TriangleRule triangle_rule(int degree);

/// Adaptive Gauss quadrature of f over [a,b] by recursive bisection.
/// Converges geometrically for endpoint algebraic/log singularities.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int max_depth = 48);

/// Composite Gauss quadrature on a mesh graded geometrically towards both
/// endpoints (piece ratio 1/2, `levels` pieces per side, `order` points per
/// piece). Integrates integrable endpoint singularities (logs, fractional
/// powers) to near machine precision at fixed deterministic cost.
double graded_integrate(const std::function<double(double)>& f, double a,
                        double b, int levels = 40, int order = 16);

}  // namespace febem
