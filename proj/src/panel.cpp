#include "febem/panel.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace febem {

namespace {

using Complex = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Principal log with the imaginary part normalized to +0.0 first. Without
// the normalization, exactly colinear geometries produce z with a negative
// zero imaginary part and Arg jumps to the wrong side of the branch cut,
// which shows up as a spurious 2*pi winding in the moments.
Complex zlog(Complex z) {
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::log(z);
}

Complex log1p_c(Complex z) {
  if (std::abs(z) < 1e-4) {
    // |z| is tiny only in the well-separated regime; four terms reach 1e-16
    return z * (1.0 + z * (-0.5 + z * (1.0 / 3.0 + z * -0.25)));
  }
  return zlog(1.0 + z);
}

Complex ipow(Complex z, int k) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

// int_0^1 int_0^1 t^m s^n log|t-s| ds dt
double log_moment_identical(int m, int n) {
  double sum = 0.0;
  for (int j = 0; j <= m; ++j) sum += 1.0 / ((j + 1.0) * (m + n - j + 1.0));
  return (-harmonic(n + 1) / (n + 1.0) + harmonic(m + n + 2) / (m + n + 2.0) -
          1.0 / ((m + n + 2.0) * (m + n + 2.0)) - sum) /
         (m + 1.0);
}

// C_n(z) = int_0^1 s^n Log(s-z) ds. Valid for z off the open interval (0,1);
// for real z outside [0,1] the real part is the desired integral. The naive
// closed form cancels catastrophically for large |z|, so switch to the
// Laurent series there.
Complex cauchy_log_moment(int n, Complex z) {
  const double az = std::abs(z);
  if (az >= 4.0) {
    Complex tail(0.0, 0.0);
    Complex zq(1.0, 0.0);
    const Complex inv = 1.0 / z;
    for (int q = 1; q <= 40; ++q) {
      zq *= inv;
      const Complex term = zq / static_cast<double>(q + n + 1);
      tail += term;
      if (std::abs(term) < 1e-18) break;
    }
    return (zlog(-z) + log1p_c(-inv) + tail) / static_cast<double>(n + 1);
  }
  Complex sum(0.0, 0.0);
  for (int j = 0; j <= n; ++j) sum += ipow(z, n - j) / static_cast<double>(j + 1);
  return ((1.0 - ipow(z, n + 1)) * zlog(1.0 - z) + ipow(z, n + 1) * zlog(-z) - sum) /
         static_cast<double>(n + 1);
}

// D_n(z) = int_0^1 s^n / (s-z) ds, same large-|z| treatment.
Complex cauchy_moment(int n, Complex z) {
  const double az = std::abs(z);
  if (az >= 4.0) {
    Complex tail(0.0, 0.0);
    Complex zq(1.0, 0.0);
    const Complex inv = 1.0 / z;
    for (int q = 1; q <= 40; ++q) {
      zq *= inv;
      const Complex term = zq / static_cast<double>(n + q);
      tail -= term;
      if (std::abs(term) < 1e-18) break;
    }
    return tail;
  }
  Complex sum(0.0, 0.0);
  for (int j = 0; j < n; ++j) sum += ipow(z, n - 1 - j) / static_cast<double>(j + 1);
  return sum + ipow(z, n) * (zlog(1.0 - z) - zlog(-z));
}

// J_p(w) = int_0^1 t^p Log(1 - t w) dt
Complex J_log(int p, Complex w) {
  const Complex winv = 1.0 / w;
  Complex sum(0.0, 0.0);
  for (int j = 0; j <= p; ++j) sum += ipow(winv, p - j) / static_cast<double>(j + 1);
  return ((1.0 - ipow(winv, p + 1)) * zlog(1.0 - w) - sum) /
         static_cast<double>(p + 1);
}

// int_0^1 t^m C_n(t w) dt, both panels parametrized from the shared vertex
Complex adjacent_slp_term(int m, int n, Complex w) {
  Complex sum(0.0, 0.0);
  for (int j = 0; j <= n; ++j)
    sum += ipow(w, n - j) / static_cast<double>((j + 1) * (m + n - j + 1));
  const Complex wp = ipow(w, n + 1);
  const Complex t3 = wp * (zlog(-w) / static_cast<double>(m + n + 2) -
                           1.0 / static_cast<double>((m + n + 2) * (m + n + 2)));
  return (J_log(m, w) - wp * J_log(m + n + 1, w) + t3 - sum) /
         static_cast<double>(n + 1);
}

// int_0^1 t^m D_n(t w) dt
Complex adjacent_dlp_term(int m, int n, Complex w) {
  Complex sum(0.0, 0.0);
  for (int j = 0; j < n; ++j)
    sum += ipow(w, n - 1 - j) / static_cast<double>((j + 1) * (m + n - j));
  return sum + ipow(w, n) * (J_log(m + n, w) -
                             zlog(-w) / static_cast<double>(m + n + 1) +
                             1.0 / static_cast<double>((m + n + 1) * (m + n + 1)));
}

// substitution u -> 1-u on a monomial coefficient basis
Eigen::MatrixXd flip_matrix(int deg) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(deg + 1, deg + 1);
  for (int m = 0; m <= deg; ++m) {
    double binom = 1.0;
    for (int r = 0; r <= m; ++r) {
      f(m, r) = (r % 2 == 0 ? binom : -binom);
      binom = binom * (m - r) / (r + 1.0);
    }
  }
  return f;
}

Eigen::MatrixXd apply_flips(const Eigen::MatrixXd& raw, bool flip_t, bool flip_s) {
  Eigen::MatrixXd out = raw;
  if (flip_t) out = flip_matrix(static_cast<int>(raw.rows()) - 1) * out;
  if (flip_s) out = out * flip_matrix(static_cast<int>(raw.cols()) - 1).transpose();
  return out;
}

Complex cplx(const Eigen::Vector2d& p) { return Complex(p.x(), p.y()); }

double segment_point_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                              const Eigen::Vector2d& p) {
  const Eigen::Vector2d d = b - a;
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (a + t * d - p).norm();
}

int escalated_order(const PanelPair& pair, int base) {
  const double scale = std::max(pair.source.length, pair.target.length);
  const double dist = panel_distance(pair);
  if (dist < 0.5 * scale) return 3 * base;
  if (dist < 2.0 * scale) return 2 * base;
  return base;
}

}  // namespace

Panel Panel::from_points(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  Panel p;
  p.a = a;
  p.b = b;
  p.length = (b - a).norm();
  if (p.length <= 0.0) throw std::invalid_argument("Panel: zero-length segment");
  const Eigen::Vector2d d = (b - a) / p.length;
  p.normal << d.y(), -d.x();
  return p;
}

PanelPair pair_from_boundary(const BoundaryMesh& bmesh, int target, int source) {
  PanelPair pair;
  pair.source = Panel::from_points(bmesh.a.row(source), bmesh.b.row(source));
  pair.target = Panel::from_points(bmesh.a.row(target), bmesh.b.row(target));
  if (target == source) {
    pair.relation = PanelRelation::identical;
    return pair;
  }
  const int tv[2] = {bmesh.segments(target, 0), bmesh.segments(target, 1)};
  const int sv[2] = {bmesh.segments(source, 0), bmesh.segments(source, 1)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (tv[i] == sv[j]) {
        pair.relation = PanelRelation::adjacent;
        pair.shared_at_target_end = (i == 1);
        pair.shared_at_source_end = (j == 1);
        return pair;
      }
    }
  }
  pair.relation = PanelRelation::disjoint;
  return pair;
}

PanelPair make_panel_pair(const Panel& source, const Panel& target) {
  PanelPair pair;
  pair.source = source;
  pair.target = target;
  const double tol = 1e-12 * std::max(source.length, target.length);
  if ((source.a - target.a).norm() <= tol && (source.b - target.b).norm() <= tol) {
    pair.relation = PanelRelation::identical;
    return pair;
  }
  const Eigen::Vector2d tv[2] = {target.a, target.b};
  const Eigen::Vector2d sv[2] = {source.a, source.b};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if ((tv[i] - sv[j]).norm() <= tol) {
        pair.relation = PanelRelation::adjacent;
        pair.shared_at_target_end = (i == 1);
        pair.shared_at_source_end = (j == 1);
        return pair;
      }
    }
  }
  pair.relation = PanelRelation::disjoint;
  return pair;
}

namespace {

bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  auto cross = [](const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    return u.x() * v.y() - u.y() * v.x();
  };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

double panel_distance(const PanelPair& pair) {
  if (pair.relation != PanelRelation::disjoint) return 0.0;
  if (segments_intersect(pair.source.a, pair.source.b, pair.target.a,
                         pair.target.b))
    return 0.0;
  double d = segment_point_distance(pair.source.a, pair.source.b, pair.target.a);
  d = std::min(d, segment_point_distance(pair.source.a, pair.source.b, pair.target.b));
  d = std::min(d, segment_point_distance(pair.target.a, pair.target.b, pair.source.a));
  d = std::min(d, segment_point_distance(pair.target.a, pair.target.b, pair.source.b));
  return d;
}

const QuadratureRule1D& cached_gauss(int n) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule1D> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

Eigen::MatrixXd slp_panel_moments(const PanelPair& pair, int target_deg,
                                  int source_deg, int outer_order) {
  const int P = target_deg;
  const int Q = source_deg;
  const double Ls = pair.source.length;
  const double Lt = pair.target.length;
  const double scale = -Lt * Ls / kTwoPi;
  Eigen::MatrixXd out(P + 1, Q + 1);

  switch (pair.relation) {
    case PanelRelation::identical: {
      for (int m = 0; m <= P; ++m)
        for (int n = 0; n <= Q; ++n)
          out(m, n) = scale * (std::log(Ls) / ((m + 1.0) * (n + 1.0)) +
                               log_moment_identical(m, n));
      return out;
    }
    case PanelRelation::adjacent: {
      const Complex shared = pair.shared_at_target_end ? cplx(pair.target.b)
                                                       : cplx(pair.target.a);
      const Complex alpha = (pair.shared_at_target_end ? cplx(pair.target.a)
                                                       : cplx(pair.target.b)) -
                            shared;
      const Complex beta = (pair.shared_at_source_end ? cplx(pair.source.a)
                                                      : cplx(pair.source.b)) -
                           shared;
      const Complex w = alpha / beta;
      Eigen::MatrixXd raw(P + 1, Q + 1);
      for (int m = 0; m <= P; ++m)
        for (int n = 0; n <= Q; ++n)
          raw(m, n) = std::log(std::abs(beta)) / ((m + 1.0) * (n + 1.0)) +
                      adjacent_slp_term(m, n, w).real();
      out = scale * apply_flips(raw, pair.shared_at_target_end,
                                pair.shared_at_source_end);
      return out;
    }
    case PanelRelation::disjoint: {
      const QuadratureRule1D& rule = cached_gauss(escalated_order(pair, outer_order));
      const Complex A = cplx(pair.source.a);
      const Complex beta = cplx(pair.source.b) - A;
      out.setZero();
      for (int g = 0; g < rule.size(); ++g) {
        const double t = rule.points[g];
        const Eigen::Vector2d x = pair.target.a + t * (pair.target.b - pair.target.a);
        const Complex z = (cplx(x) - A) / beta;
        double tm = rule.weights[g];
        for (int m = 0; m <= P; ++m) {
          for (int n = 0; n <= Q; ++n)
            out(m, n) += tm * (std::log(Ls) / (n + 1.0) +
                               cauchy_log_moment(n, z).real());
          tm *= t;
        }
      }
      out *= scale;
      return out;
    }
  }
  throw std::logic_error("slp_panel_moments: unreachable");
}

Eigen::MatrixXd dlp_panel_moments(const PanelPair& pair, int target_deg,
                                  int source_deg, int outer_order) {
  const int P = target_deg;
  const int Q = source_deg;
  const double Lt = pair.target.length;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(P + 1, Q + 1);

  switch (pair.relation) {
    case PanelRelation::identical:
      return out;  // flat panel: n(y).(x-y) = 0
    case PanelRelation::adjacent: {
      const Complex shared = pair.shared_at_target_end ? cplx(pair.target.b)
                                                       : cplx(pair.target.a);
      const Complex alpha = (pair.shared_at_target_end ? cplx(pair.target.a)
                                                       : cplx(pair.target.b)) -
                            shared;
      const Complex beta = (pair.shared_at_source_end ? cplx(pair.source.a)
                                                      : cplx(pair.source.b)) -
                           shared;
      const Complex w = alpha / beta;
      if (w.imag() == 0.0) return out;  // colinear: kernel vanishes
      Eigen::MatrixXd raw(P + 1, Q + 1);
      for (int m = 0; m <= P; ++m)
        for (int n = 0; n <= Q; ++n)
          raw(m, n) = -adjacent_dlp_term(m, n, w).imag() * (Lt / kTwoPi);
      out = apply_flips(raw, pair.shared_at_target_end, pair.shared_at_source_end);
      // a parameter flip of the source reverses the direction vector the
      // formula ties the normal to; the geometric normal is fixed
      if (pair.shared_at_source_end) out = -out;
      return out;
    }
    case PanelRelation::disjoint: {
      const QuadratureRule1D& rule = cached_gauss(escalated_order(pair, outer_order));
      const Complex A = cplx(pair.source.a);
      const Complex beta = cplx(pair.source.b) - A;
      for (int g = 0; g < rule.size(); ++g) {
        const double t = rule.points[g];
        const Eigen::Vector2d x = pair.target.a + t * (pair.target.b - pair.target.a);
        const Complex z = (cplx(x) - A) / beta;
        double tm = rule.weights[g];
        for (int m = 0; m <= P; ++m) {
          for (int n = 0; n <= Q; ++n)
            out(m, n) -= tm * cauchy_moment(n, z).imag() * (Lt / kTwoPi);
          tm *= t;
        }
      }
      return out;
    }
  }
  throw std::logic_error("dlp_panel_moments: unreachable");
}

Eigen::VectorXd slp_potential_moments(const Panel& source,
                                      const Eigen::Vector2d& x, int deg) {
  const Complex A = cplx(source.a);
  const Complex beta = cplx(source.b) - A;
  const Complex z = (cplx(x) - A) / beta;
  Eigen::VectorXd out(deg + 1);
  for (int n = 0; n <= deg; ++n)
    out[n] = -(source.length / kTwoPi) *
             (std::log(source.length) / (n + 1.0) + cauchy_log_moment(n, z).real());
  return out;
}

Eigen::VectorXd dlp_potential_moments(const Panel& source,
                                      const Eigen::Vector2d& x, int deg) {
  const Complex A = cplx(source.a);
  const Complex beta = cplx(source.b) - A;
  const Complex z = (cplx(x) - A) / beta;
  Eigen::VectorXd out(deg + 1);
  for (int n = 0; n <= deg; ++n)
    out[n] = -cauchy_moment(n, z).imag() / kTwoPi;
  return out;
}

}  // namespace febem
