#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "febem/coupling.hpp"
#include "febem/errors.hpp"

namespace febem {

/// Configuration of one refinement study.
struct StudyConfig {
  int degree = 1;
  double alpha = 1.5;
  int level_min = 0;
  int level_max = 6;
  DataMode mode = DataMode::project_u0;
  int quad_volume = 10;    // polynomial degree of the volume rule
  int quad_boundary = 16;  // Gauss points per segment for data/error terms
  std::string format = "csv";  // csv | json
  std::string out;             // empty -> stdout
  bool dump_mesh = false;
  bool dump_matrix = false;
};

/// Throws std::invalid_argument with a message on bad configuration.
void validate(const StudyConfig& config);

struct StudyResult {
  std::vector<ErrorReport> reports;
  EocTable table;
};

/// Runs the refinement loop level by level (one level's system in memory at
/// a time): build mesh -> spaces -> assemble -> solve -> errors. Optional
/// progress notes go to `progress`. Dump files are written next to
/// config.out (or the working directory when writing to stdout).
StudyResult run_study(const StudyConfig& config, std::ostream* progress = nullptr);

std::string format_report_csv(const StudyResult& result);
std::string format_report_json(const StudyResult& result);

/// Writes to config.out (or `fallback` when out is empty) in config.format.
void emit_report(const StudyResult& result, const StudyConfig& config,
                 std::ostream& fallback);

}  // namespace febem
