#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "febem/quadrature.hpp"

using namespace febem;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1") {
  for (int n : {1, 2, 4, 8, 16}) {
    const QuadratureRule1D rule = gauss_legendre(n);
    CHECK(rule.size() == n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += rule.weights[i] * std::pow(rule.points[i], p);
      CHECK(acc == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss_legendre nodes lie in (0,1) and weights are positive") {
  const QuadratureRule1D rule = gauss_legendre(12);
  for (int i = 0; i < rule.size(); ++i) {
    CHECK(rule.points[i] > 0.0);
    CHECK(rule.points[i] < 1.0);
    CHECK(rule.weights[i] > 0.0);
  }
  CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("triangle_rule is exact on reference monomials") {
  for (int degree : {2, 4, 10}) {
    const TriangleRule rule = triangle_rule(degree);
    for (int p = 0; p + 0 <= degree; ++p) {
      for (int q = 0; p + q <= degree; ++q) {
        double acc = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          acc += rule.weights[i] * std::pow(rule.points(i, 0), p) *
                 std::pow(rule.points(i, 1), q);
        const double exact = factorial(p) * factorial(q) / factorial(p + q + 2);
        CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("adaptive_integrate handles endpoint singularities") {
  CHECK(adaptive_integrate([](double x) { return std::sqrt(x); }, 0, 1) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_integrate([](double x) { return std::log(x); }, 0, 1) ==
        doctest::Approx(-1.0).epsilon(1e-11));
  CHECK(adaptive_integrate([](double x) { return std::cos(x); }, 0, 1) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}
