#include "febem/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace febem {

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  QuadratureRule1D rule;
  rule.points = (es.eigenvalues().array() + 1.0) / 2.0;  // map [-1,1] -> [0,1]
  rule.weights = es.eigenvectors().row(0).array().square();
  return rule;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_rule: degree must be >= 0");
  // Duffy: (a,b) in [0,1]^2 -> (xi,eta) = (a, b(1-a)), jacobian (1-a).
  // The xi-integrand has degree <= degree+1, the eta-integrand <= degree.
  const int n = (degree + 3) / 2;
  const QuadratureRule1D g = gauss_legendre(n);
  TriangleRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = g.points[i];
      const double b = g.points[j];
      rule.points(idx, 0) = a;
      rule.points(idx, 1) = b * (1.0 - a);
      rule.weights[idx] = g.weights[i] * g.weights[j] * (1.0 - a);
      ++idx;
    }
  }
  return rule;
}

namespace {

struct AdaptiveGauss {
  const std::function<double(double)>& f;
  const QuadratureRule1D& lo;
  const QuadratureRule1D& hi;

  double apply(const QuadratureRule1D& rule, double a, double b) const {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i)
      acc += rule.weights[i] * f(a + rule.points[i] * (b - a));
    return acc * (b - a);
  }

  double recurse(double a, double b, double tol, int depth) const {
    const double coarse = apply(lo, a, b);
    const double fine = apply(hi, a, b);
    const double diff = std::abs(fine - coarse);
    // the relative floor stops recursion once the estimate hits roundoff
    if (diff <= tol || diff <= 4e-16 * std::abs(fine) || depth <= 0) return fine;
    const double m = 0.5 * (a + b);
    return recurse(a, m, 0.5 * tol, depth - 1) +
           recurse(m, b, 0.5 * tol, depth - 1);
  }
};

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  static const QuadratureRule1D lo = gauss_legendre(7);
  static const QuadratureRule1D hi = gauss_legendre(15);
  AdaptiveGauss ag{f, lo, hi};
  return ag.recurse(a, b, tol, max_depth);
}

double graded_integrate(const std::function<double(double)>& f, double a,
                        double b, int levels, int order) {
  const QuadratureRule1D rule = gauss_legendre(order);
  auto piece = [&](double lo, double hi) {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i)
      acc += rule.weights[i] * f(lo + rule.points[i] * (hi - lo));
    return acc * (hi - lo);
  };
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int j = 0; j < levels; ++j) {
    const double outer = half * std::pow(0.5, j);
    const double inner = (j + 1 == levels) ? 0.0 : half * std::pow(0.5, j + 1);
    acc += piece(a + inner, a + outer);  // towards a
    acc += piece(b - outer, b - inner);  // towards b
  }
  return acc;
}

}  // namespace febem
