#pragma once

// Independent quadrature oracles and randomized panel geometry for tests.
// The oracles integrate the raw kernels over geometrically graded composite
// Gauss meshes (singularities always sit at piece endpoints) and never touch
// the closed-form panel code they are used to verify.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "febem/panel.hpp"
#include "febem/quadrature.hpp"

namespace febem::testing {

inline double kernel_slp(const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  return -std::log((x - y).norm()) / (2.0 * std::numbers::pi);
}

inline double kernel_dlp(const Eigen::Vector2d& x, const Eigen::Vector2d& y,
                         const Eigen::Vector2d& normal_y) {
  const Eigen::Vector2d r = x - y;
  return normal_y.dot(r) / (2.0 * std::numbers::pi * r.squaredNorm());
}

// Vector-valued composite Gauss, graded towards both interval endpoints.
inline Eigen::VectorXd graded_vec(const std::function<Eigen::VectorXd(double)>& f,
                                  double a, double b, int levels = 40,
                                  int order = 16) {
  const QuadratureRule1D& rule = cached_gauss(order);
  Eigen::VectorXd acc;
  auto piece = [&](double lo, double hi) {
    for (int i = 0; i < rule.size(); ++i) {
      const Eigen::VectorXd v = f(lo + rule.points[i] * (hi - lo));
      const double w = rule.weights[i] * (hi - lo);
      if (acc.size() == 0) acc = Eigen::VectorXd::Zero(v.size());
      acc += w * v;
    }
  };
  const double half = 0.5 * (b - a);
  for (int j = 0; j < levels; ++j) {
    const double outer = half * std::pow(0.5, j);
    const double inner = (j + 1 == levels) ? 0.0 : half * std::pow(0.5, j + 1);
    piece(a + inner, a + outer);
    piece(b - outer, b - inner);
  }
  return acc;
}

// All inner moments n = 0..deg over the source panel for a fixed x, split at
// the parameter of the closest point so singularities sit at piece endpoints.
template <typename Kernel>
Eigen::VectorXd oracle_inner_all(const Panel& src, const Eigen::Vector2d& x,
                                 int deg, Kernel&& kernel) {
  const Eigen::Vector2d d = src.b - src.a;
  auto f = [&](double s) {
    const Eigen::Vector2d y = src.a + s * d;
    // graded pieces can land within roundoff of the singular point; their
    // true contribution is below 1e-15, so drop them instead of log(0)
    if ((x - y).squaredNorm() < 1e-60)
      return Eigen::VectorXd(Eigen::VectorXd::Zero(deg + 1));
    const double k = kernel(x, y) * src.length;
    Eigen::VectorXd v(deg + 1);
    double sn = 1.0;
    for (int n = 0; n <= deg; ++n, sn *= s) v[n] = k * sn;
    return v;
  };
  const double split = std::clamp((x - src.a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(deg + 1);
  if (split > 1e-15) acc += graded_vec(f, 0.0, split, 40, 12);
  if (split < 1.0 - 1e-15) acc += graded_vec(f, split, 1.0, 40, 12);
  return acc;
}

template <typename Kernel>
Eigen::MatrixXd oracle_moments(const PanelPair& pair, int target_deg,
                               int source_deg, Kernel&& kernel) {
  const Eigen::Vector2d d = pair.target.b - pair.target.a;
  auto outer = [&](double t) {
    const Eigen::Vector2d x = pair.target.a + t * d;
    const Eigen::VectorXd inner =
        oracle_inner_all(pair.source, x, source_deg, kernel);
    Eigen::VectorXd v((target_deg + 1) * (source_deg + 1));
    double tm = pair.target.length;
    for (int m = 0; m <= target_deg; ++m, tm *= t)
      for (int n = 0; n <= source_deg; ++n)
        v[m * (source_deg + 1) + n] = tm * inner[n];
    return v;
  };
  // the target parameters of the source endpoints are derivative kinks of
  // the outer integrand; integrate the spans between them separately
  const double l2 = d.squaredNorm();
  double knots[4] = {0.0, 1.0,
                     std::clamp((pair.source.a - pair.target.a).dot(d) / l2, 0.0, 1.0),
                     std::clamp((pair.source.b - pair.target.a).dot(d) / l2, 0.0, 1.0)};
  std::sort(knots, knots + 4);
  Eigen::VectorXd flat =
      Eigen::VectorXd::Zero((target_deg + 1) * (source_deg + 1));
  for (int i = 0; i < 3; ++i)
    if (knots[i + 1] - knots[i] > 1e-15)
      flat += graded_vec(outer, knots[i], knots[i + 1], 40, 12);
  Eigen::MatrixXd out(target_deg + 1, source_deg + 1);
  for (int m = 0; m <= target_deg; ++m)
    for (int n = 0; n <= source_deg; ++n)
      out(m, n) = flat[m * (source_deg + 1) + n];
  return out;
}

inline Eigen::MatrixXd oracle_slp_moments(const PanelPair& pair, int target_deg,
                                          int source_deg) {
  return oracle_moments(pair, target_deg, source_deg, kernel_slp);
}

inline Eigen::MatrixXd oracle_dlp_moments(const PanelPair& pair, int target_deg,
                                          int source_deg) {
  const Eigen::Vector2d nsrc = pair.source.normal;
  return oracle_moments(pair, target_deg, source_deg,
                        [&](const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
                          return kernel_dlp(x, y, nsrc);
                        });
}

// single-panel potential oracle at a fixed point
template <typename Kernel>
double oracle_inner(const Panel& src, const Eigen::Vector2d& x, int n,
                    Kernel&& kernel, double /*tol*/ = 0.0) {
  return oracle_inner_all(src, x, n, kernel)[n];
}

// -------------------------------------------------------------- random pairs

struct PanelRng {
  std::mt19937 gen;
  explicit PanelRng(unsigned seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }

  Eigen::Vector2d point() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  Panel panel(double min_len = 0.05, double max_len = 0.5) {
    const Eigen::Vector2d a = point();
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    const double len = uniform(min_len, max_len);
    return Panel::from_points(
        a, a + len * Eigen::Vector2d(std::cos(angle), std::sin(angle)));
  }

  PanelPair identical_pair() {
    const Panel p = panel();
    return make_panel_pair(p, p);
  }

  PanelPair adjacent_pair() {
    const Eigen::Vector2d v = point();
    const double a1 = uniform(0.0, 2.0 * std::numbers::pi);
    const double a2 = a1 + uniform(0.15, 2.0 * std::numbers::pi - 0.15);
    const double l1 = uniform(0.1, 0.4);
    const double l2 = l1 * uniform(0.25, 4.0);
    Eigen::Vector2d e1 = v + l1 * Eigen::Vector2d(std::cos(a1), std::sin(a1));
    Eigen::Vector2d e2 = v + l2 * Eigen::Vector2d(std::cos(a2), std::sin(a2));
    // randomize at which parameter end the shared vertex sits
    const bool flip_s = gen() & 1;
    const bool flip_t = gen() & 1;
    const Panel src = flip_s ? Panel::from_points(e1, v) : Panel::from_points(v, e1);
    const Panel tgt = flip_t ? Panel::from_points(e2, v) : Panel::from_points(v, e2);
    return make_panel_pair(src, tgt);
  }

  PanelPair disjoint_pair(double min_gap_factor = 0.3) {
    for (;;) {
      const Panel s = panel();
      const Panel t = panel();
      PanelPair pair = make_panel_pair(s, t);
      if (pair.relation != PanelRelation::disjoint) continue;
      const double gap = panel_distance(pair);
      if (gap >= min_gap_factor * std::max(s.length, t.length)) return pair;
    }
  }
};

}  // namespace febem::testing
