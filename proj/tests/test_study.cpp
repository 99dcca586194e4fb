#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "febem/study.hpp"

using namespace febem;

namespace {

StudyConfig small_config() {
  StudyConfig config;
  config.degree = 1;
  config.alpha = 1.5;
  config.level_min = 0;
  config.level_max = 2;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  StudyConfig config = small_config();
  CHECK_NOTHROW(validate(config));
  config.degree = 3;
  CHECK_THROWS(validate(config));
  config = small_config();
  config.level_max = -1;
  CHECK_THROWS(validate(config));
  config = small_config();
  config.alpha = 0.0;
  CHECK_THROWS(validate(config));
  config = small_config();
  config.format = "xml";
  CHECK_THROWS(validate(config));
  config = small_config();
  config.quad_boundary = 1;
  CHECK_THROWS(validate(config));
}

TEST_CASE("run_study bookkeeping and report formats") {
  const StudyConfig config = small_config();
  const StudyResult result = run_study(config);
  CHECK(result.reports.size() == 3);
  CHECK(result.table.rows.size() == 2);
  CHECK(result.reports[0].ndof_fem == 11);
  CHECK(result.reports[0].ndof_bem == 8);
  for (const ErrorReport& r : result.reports) {
    CHECK(r.err_h1 > 0.0);
    CHECK(std::isfinite(r.err_h1));
    CHECK(r.err_strip <= r.err_l2);
  }
  // errors decrease monotonically
  for (size_t i = 1; i < result.reports.size(); ++i) {
    CHECK(result.reports[i].err_h1 < result.reports[i - 1].err_h1);
    CHECK(result.reports[i].err_flux < result.reports[i - 1].err_flux);
  }

  SUBCASE("csv structure") {
    const std::string csv = format_report_csv(result);
    CHECK(csv.substr(0, 58) ==
          "level,h,ndof_fem,ndof_bem,err_h1,err_l2,err_strip,err_flux");
    CHECK(csv.find("# eoc\n") != std::string::npos);
    CHECK(csv.find("levels,eoc_h1,eoc_l2,eoc_strip,eoc_flux\n") != std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(csv.find("0-1,") != std::string::npos);
  }

  SUBCASE("json round trip preserves values exactly") {
    const std::string text = format_report_json(result);
    const nlohmann::json j = nlohmann::json::parse(text);
    REQUIRE(j["reports"].size() == 3);
    REQUIRE(j["eoc"].size() == 2);
    for (size_t i = 0; i < result.reports.size(); ++i) {
      CHECK(j["reports"][i]["level"].get<int>() == result.reports[i].level);
      CHECK(j["reports"][i]["h"].get<double>() == result.reports[i].h);
      CHECK(j["reports"][i]["err_h1"].get<double>() == result.reports[i].err_h1);
      CHECK(j["reports"][i]["err_flux"].get<double>() ==
            result.reports[i].err_flux);
    }
    for (size_t i = 0; i < result.table.rows.size(); ++i)
      CHECK(j["eoc"][i]["eoc_h1"].get<double>() == result.table.rows[i].eoc_h1);
  }

  SUBCASE("determinism: two runs produce byte-identical reports") {
    const StudyResult again = run_study(config);
    CHECK(format_report_csv(result) == format_report_csv(again));
    CHECK(format_report_json(result) == format_report_json(again));
  }
}

TEST_CASE("single level has no eoc rows; empty report is header-only") {
  StudyConfig config = small_config();
  config.level_max = 0;
  const StudyResult result = run_study(config);
  CHECK(result.reports.size() == 1);
  CHECK(result.table.rows.empty());
  const std::string csv = format_report_csv(result);
  CHECK(csv.find("# eoc") == std::string::npos);

  const StudyResult empty;
  CHECK(format_report_csv(empty) ==
        "level,h,ndof_fem,ndof_bem,err_h1,err_l2,err_strip,err_flux\n");
}

TEST_CASE("project-both mode runs through the same pipeline") {
  StudyConfig config = small_config();
  config.level_max = 1;
  config.mode = DataMode::project_both;
  const StudyResult result = run_study(config);
  CHECK(result.reports.size() == 2);
  CHECK(result.reports[1].err_h1 < result.reports[0].err_h1);
}

TEST_CASE("reported errors are stable under raising the quadrature orders") {
  StudyConfig base = small_config();
  base.level_min = base.level_max = 3;
  const StudyResult r10 = run_study(base);
  StudyConfig refined = base;
  refined.quad_volume = 14;
  refined.quad_boundary = 20;
  const StudyResult r14 = run_study(refined);
  const ErrorReport &a = r10.reports[0], &b = r14.reports[0];
  CHECK(std::abs(a.err_h1 - b.err_h1) / b.err_h1 < 5e-3);
  CHECK(std::abs(a.err_l2 - b.err_l2) / b.err_l2 < 5e-3);
  CHECK(std::abs(a.err_strip - b.err_strip) / b.err_strip < 5e-3);
  CHECK(std::abs(a.err_flux - b.err_flux) / b.err_flux < 5e-3);
}
