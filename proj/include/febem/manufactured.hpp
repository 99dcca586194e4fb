#pragma once

#include <Eigen/Core>
#include <functional>

#include "febem/bem.hpp"

namespace febem {

/// Prescribed exact solution pair: u = scale * Re(z^alpha) inside,
/// u_ext = Re(1/(z - pole)) outside, both harmonic. The transmission data
/// (u0, phi0, f) is derived from the pair.
struct ManufacturedCase {
  double alpha = 1.5;
  double scale = 1000.0;
  Eigen::Vector2d pole{0.1, 0.1};
  int k_target = 1;

  static ManufacturedCase lowest_order();   // alpha = 3/2, k = 1
  static ManufacturedCase higher_order();   // alpha = 5/2, k = 2
};

struct ValueGrad {
  double value;
  Eigen::Vector2d grad;
};

/// Interior solution value; well-defined on the whole closed domain.
/// z^alpha uses the branch with arg(z) in (-pi/2, 3pi/2), single-valued
/// and smooth on the closed L-shape minus the origin.
double interior_value(const ManufacturedCase& c, const Eigen::Vector2d& x);

/// Interior solution and gradient; throws std::domain_error at the branch
/// point (0,0) where the gradient is not evaluable.
ValueGrad interior_exact(const ManufacturedCase& c, const Eigen::Vector2d& x);

/// Exterior solution Re(1/(z-pole)); throws at the pole.
ValueGrad exterior_exact(const ManufacturedCase& c, const Eigen::Vector2d& x);

/// |D^2 u|^2 with multinomial weights (= 2 |F''|^2 for harmonic Re F).
double interior_hess_sq(const ManufacturedCase& c, const Eigen::Vector2d& x);
/// |D^3 u|^2 with multinomial weights (= 4 |F'''|^2).
double interior_third_sq(const ManufacturedCase& c, const Eigen::Vector2d& x);

/// Exterior flux phi = grad(u_ext) . n with n pointing into the exterior.
double exact_flux(const ManufacturedCase& c, const Eigen::Vector2d& x,
                  const Eigen::Vector2d& normal);

/// Arclength derivative of the exterior flux along a segment of direction
/// tau (unit) and normal n: tau^T Hess(u_ext) n.
double exact_flux_tangential_derivative(const ManufacturedCase& c,
                                        const Eigen::Vector2d& x,
                                        const Eigen::Vector2d& tau,
                                        const Eigen::Vector2d& normal);

/// Transmission data derived from the exact pair: u0 = u - u_ext on Gamma,
/// phi0 = (grad u - grad u_ext) . n, f = -div(A grad u) = 0 (A = Id and u
/// harmonic for every alpha).
struct JumpData {
  BoundaryFn u0;
  FluxFn phi0;
  std::function<double(const Eigen::Vector2d&)> f;
};
JumpData jump_data(const ManufacturedCase& c);

/// Distance from the pole to the boundary (must be positive).
double pole_distance(const ManufacturedCase& c, const BoundaryMesh& bmesh);

}  // namespace febem
