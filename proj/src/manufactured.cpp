#include "febem/manufactured.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace febem {

namespace {

using Complex = std::complex<double>;

// z^p on the branch arg(z) in (-pi/2, 3pi/2): the cut lies on the negative
// imaginary axis, outside the closed upper half-plane containing Omega
Complex zpow_branch(const Eigen::Vector2d& x, double p) {
  const double r = x.norm();
  if (r == 0.0) return Complex(0.0, 0.0);
  double theta = std::atan2(x.y(), x.x());
  if (theta < -std::numbers::pi / 2.0) theta += 2.0 * std::numbers::pi;
  const double rp = std::pow(r, p);
  return Complex(rp * std::cos(p * theta), rp * std::sin(p * theta));
}

Complex zc(const Eigen::Vector2d& x) { return Complex(x.x(), x.y()); }

}  // namespace

ManufacturedCase ManufacturedCase::lowest_order() {
  ManufacturedCase c;
  c.alpha = 1.5;
  c.k_target = 1;
  return c;
}

ManufacturedCase ManufacturedCase::higher_order() {
  ManufacturedCase c;
  c.alpha = 2.5;
  c.k_target = 2;
  return c;
}

double interior_value(const ManufacturedCase& c, const Eigen::Vector2d& x) {
  return c.scale * zpow_branch(x, c.alpha).real();
}

ValueGrad interior_exact(const ManufacturedCase& c, const Eigen::Vector2d& x) {
  if (x.norm() == 0.0)
    throw std::domain_error("interior_exact: gradient at the branch point (0,0)");
  ValueGrad out;
  out.value = interior_value(c, x);
  const Complex d = c.scale * c.alpha * zpow_branch(x, c.alpha - 1.0);
  out.grad << d.real(), -d.imag();
  return out;
}

ValueGrad exterior_exact(const ManufacturedCase& c, const Eigen::Vector2d& x) {
  const Complex dz = zc(x) - zc(c.pole);
  if (std::abs(dz) == 0.0)
    throw std::domain_error("exterior_exact: evaluation at the pole");
  ValueGrad out;
  out.value = (1.0 / dz).real();
  const Complex d = -1.0 / (dz * dz);
  out.grad << d.real(), -d.imag();
  return out;
}

double interior_hess_sq(const ManufacturedCase& c, const Eigen::Vector2d& x) {
  const Complex f2 =
      c.scale * c.alpha * (c.alpha - 1.0) * zpow_branch(x, c.alpha - 2.0);
  return 2.0 * std::norm(f2);
}

double interior_third_sq(const ManufacturedCase& c, const Eigen::Vector2d& x) {
  const Complex f3 = c.scale * c.alpha * (c.alpha - 1.0) * (c.alpha - 2.0) *
                     zpow_branch(x, c.alpha - 3.0);
  return 4.0 * std::norm(f3);
}

double exact_flux(const ManufacturedCase& c, const Eigen::Vector2d& x,
                  const Eigen::Vector2d& normal) {
  return exterior_exact(c, x).grad.dot(normal);
}

double exact_flux_tangential_derivative(const ManufacturedCase& c,
                                        const Eigen::Vector2d& x,
                                        const Eigen::Vector2d& tau,
                                        const Eigen::Vector2d& normal) {
  const Complex dz = zc(x) - zc(c.pole);
  const Complex f2 = 2.0 / (dz * dz * dz);
  Eigen::Matrix2d hess;
  hess << f2.real(), -f2.imag(), -f2.imag(), -f2.real();
  return tau.dot(hess * normal);
}

JumpData jump_data(const ManufacturedCase& c) {
  JumpData data;
  data.u0 = [c](const Eigen::Vector2d& x) {
    return interior_value(c, x) - exterior_exact(c, x).value;
  };
  data.phi0 = [c](const Eigen::Vector2d& x, const Eigen::Vector2d& n) {
    return (interior_exact(c, x).grad - exterior_exact(c, x).grad).dot(n);
  };
  data.f = [](const Eigen::Vector2d&) { return 0.0; };
  return data;
}

double pole_distance(const ManufacturedCase& c, const BoundaryMesh& bmesh) {
  double dist = std::numeric_limits<double>::max();
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = Eigen::Vector2d(bmesh.b.row(s)) - a;
    const double t = std::clamp((c.pole - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    dist = std::min(dist, (a + t * d - c.pole).norm());
  }
  return dist;
}

}  // namespace febem
