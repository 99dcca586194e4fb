#pragma once

#include <Eigen/Core>

#include "febem/mesh.hpp"
#include "febem/quadrature.hpp"

namespace febem {

/// Straight boundary panel with unit outward normal (CCW boundary).
struct Panel {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
  double length = 0.0;
  Eigen::Vector2d normal;

  static Panel from_points(const Eigen::Vector2d& a, const Eigen::Vector2d& b);
};

enum class PanelRelation { identical, adjacent, disjoint };

/// Source/target panel pair with its relation tag. For adjacent pairs the
/// flags record at which parameter end of each panel the shared vertex sits.
struct PanelPair {
  Panel source;
  Panel target;
  PanelRelation relation = PanelRelation::disjoint;
  bool shared_at_target_end = false;
  bool shared_at_source_end = false;
};

/// Pair of boundary segments with the relation determined from shared
/// vertex indices (exact, no coordinate tolerance).
PanelPair pair_from_boundary(const BoundaryMesh& bmesh, int target, int source);

/// Pair of free-standing panels; relation determined from endpoint
/// coordinates with a relative tolerance (intended for tests).
PanelPair make_panel_pair(const Panel& source, const Panel& target);

/// Shortest distance between the two panels of a pair (0 for identical
/// and adjacent pairs).
double panel_distance(const PanelPair& pair);

/// Galerkin moments of the single layer kernel G(x,y) = -log|x-y|/(2pi):
///
///   out(m, n) = int_target int_source G(x,y) s^n t^m dS(y) dS(x),
///
/// where s, t in [0,1] are the source/target panel parameters and
/// m <= target_deg, n <= source_deg. Identical and adjacent pairs are
/// evaluated in closed form; disjoint pairs use the analytic inner
/// integral and Gauss quadrature of order outer_order in t (escalated
/// automatically for nearly touching pairs).
Eigen::MatrixXd slp_panel_moments(const PanelPair& pair, int target_deg,
                                  int source_deg, int outer_order = 16);

/// Galerkin moments of the double layer kernel dG/dn(y):
///
///   out(m, n) = int_target int_source dG/dn(y)(x,y) s^n t^m dS(y) dS(x).
///
/// The kernel vanishes identically when both panels lie on one line
/// (n(y).(x-y) = 0), in particular for identical pairs.
Eigen::MatrixXd dlp_panel_moments(const PanelPair& pair, int target_deg,
                                  int source_deg, int outer_order = 16);

/// Single layer potential moments at a point x off the source line:
/// out(n) = int_source G(x,y) s^n dS(y), n = 0..deg.
Eigen::VectorXd slp_potential_moments(const Panel& source,
                                      const Eigen::Vector2d& x, int deg);

/// Double layer potential moments: out(n) = int_source dG/dn(y) s^n dS(y).
Eigen::VectorXd dlp_potential_moments(const Panel& source,
                                      const Eigen::Vector2d& x, int deg);

/// Shared Gauss rule cache (rules on [0,1]).
const QuadratureRule1D& cached_gauss(int n);

}  // namespace febem
