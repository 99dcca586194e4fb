#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "febem/panel.hpp"
#include "support.hpp"

using namespace febem;
using febem::testing::PanelRng;

namespace {

PanelPair axis_pair(const Eigen::Vector2d& sa, const Eigen::Vector2d& sb,
                    const Eigen::Vector2d& ta, const Eigen::Vector2d& tb) {
  return make_panel_pair(Panel::from_points(sa, sb), Panel::from_points(ta, tb));
}

}  // namespace

TEST_CASE("identical panel, constant densities: closed form (L^2/2pi)(3/2 - ln L)") {
  for (double L : {0.05, 0.2, 0.4}) {
    const Panel p = Panel::from_points({0.3, 0.1}, {0.3 + L, 0.1});
    const PanelPair pair = make_panel_pair(p, p);
    const double got = slp_panel_moments(pair, 0, 0)(0, 0);
    const double expected = L * L / (2.0 * std::numbers::pi) * (1.5 - std::log(L));
    CHECK(got == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("relation classification") {
  const PanelPair id = axis_pair({0, 0}, {1, 0}, {0, 0}, {1, 0});
  CHECK(id.relation == PanelRelation::identical);
  const PanelPair adj = axis_pair({0, 0}, {1, 0}, {1, 0}, {1, 1});
  CHECK(adj.relation == PanelRelation::adjacent);
  CHECK(adj.shared_at_target_end == false);
  CHECK(adj.shared_at_source_end == true);
  const PanelPair dis = axis_pair({0, 0}, {1, 0}, {0, 2}, {1, 2});
  CHECK(dis.relation == PanelRelation::disjoint);
  CHECK(panel_distance(dis) == doctest::Approx(2.0));
}

TEST_CASE("zero-length panel is rejected") {
  CHECK_THROWS(Panel::from_points({0.5, 0.5}, {0.5, 0.5}));
}

TEST_CASE("slp symmetry under source/target swap") {
  PanelRng rng(7);
  for (int i = 0; i < 20; ++i) {
    PanelPair pair = rng.disjoint_pair();
    PanelPair swapped = make_panel_pair(pair.target, pair.source);
    const Eigen::MatrixXd a = slp_panel_moments(pair, 2, 2);
    const Eigen::MatrixXd b = slp_panel_moments(swapped, 2, 2);
    CHECK((a - b.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("dlp vanishes on the panel itself and on colinear pairs") {
  const Panel p = Panel::from_points({0.2, 0.3}, {0.6, 0.3});
  CHECK(dlp_panel_moments(make_panel_pair(p, p), 2, 2).cwiseAbs().maxCoeff() == 0.0);
  // colinear adjacent and colinear disjoint
  const PanelPair adj = axis_pair({0, 0}, {0.3, 0}, {0.3, 0}, {0.7, 0});
  CHECK(dlp_panel_moments(adj, 1, 1).cwiseAbs().maxCoeff() == 0.0);
  const PanelPair dis = axis_pair({0, 0}, {0.3, 0}, {0.5, 0}, {0.9, 0});
  CHECK(dlp_panel_moments(dis, 1, 1).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("analytic moments match the adaptive oracle on random panels") {
  PanelRng rng(42);
  const double tol = 1e-10;
  SUBCASE("identical") {
    for (int i = 0; i < 12; ++i) {
      const PanelPair pair = rng.identical_pair();
      const Eigen::MatrixXd mom = slp_panel_moments(pair, 2, 2);
      const Eigen::MatrixXd want = testing::oracle_slp_moments(pair, 2, 2);
      CHECK((mom - want).cwiseAbs().maxCoeff() < tol);
    }
  }
  SUBCASE("adjacent slp + dlp") {
    for (int i = 0; i < 12; ++i) {
      const PanelPair pair = rng.adjacent_pair();
      const Eigen::MatrixXd slp = slp_panel_moments(pair, 2, 2);
      const Eigen::MatrixXd dlp = dlp_panel_moments(pair, 2, 2);
      CHECK((slp - testing::oracle_slp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < tol);
      CHECK((dlp - testing::oracle_dlp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < tol);
    }
  }
  SUBCASE("disjoint slp + dlp") {
    for (int i = 0; i < 12; ++i) {
      const PanelPair pair = rng.disjoint_pair();
      const Eigen::MatrixXd slp = slp_panel_moments(pair, 2, 2);
      const Eigen::MatrixXd dlp = dlp_panel_moments(pair, 2, 2);
      CHECK((slp - testing::oracle_slp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < tol);
      CHECK((dlp - testing::oracle_dlp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < tol);
    }
  }
}

TEST_CASE("far pair matches the oracle (large-|z| series path)") {
  const PanelPair pair =
      axis_pair({0, 0}, {0.05, 0.01}, {40.0, 37.0}, {40.04, 37.03});
  const Eigen::MatrixXd slp = slp_panel_moments(pair, 2, 2);
  const Eigen::MatrixXd dlp = dlp_panel_moments(pair, 2, 2);
  CHECK((slp - testing::oracle_slp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dlp - testing::oracle_dlp_moments(pair, 2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("potential moments match direct quadrature") {
  const Panel src = Panel::from_points({0.1, 0.2}, {0.5, 0.45});
  const Eigen::Vector2d x(1.2, -0.3);
  const Eigen::VectorXd slp = slp_potential_moments(src, x, 2);
  const Eigen::VectorXd dlp = dlp_potential_moments(src, x, 2);
  for (int n = 0; n <= 2; ++n) {
    CHECK(slp[n] == doctest::Approx(testing::oracle_inner(
                        src, x, n, testing::kernel_slp, 1e-14))
                        .epsilon(1e-12));
    const Eigen::Vector2d nrm = src.normal;
    auto kern = [&](const Eigen::Vector2d& xx, const Eigen::Vector2d& yy) {
      return testing::kernel_dlp(xx, yy, nrm);
    };
    CHECK(dlp[n] ==
          doctest::Approx(testing::oracle_inner(src, x, n, kern, 1e-14))
              .epsilon(1e-12));
  }
}
