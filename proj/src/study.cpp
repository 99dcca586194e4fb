#include "febem/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "febem/manufactured.hpp"

namespace febem {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_path(const StudyConfig& config, const std::string& kind, int level) {
  std::string stem = config.out.empty() ? std::string("study") : config.out;
  const auto dot = stem.find_last_of('.');
  const auto slash = stem.find_last_of("/\\");
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    stem = stem.substr(0, dot);
  return stem + "-" + kind + "-level" + std::to_string(level) + ".txt";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void validate(const StudyConfig& config) {
  if (config.degree != 1 && config.degree != 2)
    throw std::invalid_argument("degree must be 1 or 2");
  if (!(config.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (config.level_min < 0 || config.level_max < config.level_min)
    throw std::invalid_argument("level range is empty");
  if (config.quad_volume < 2 || config.quad_boundary < 2)
    throw std::invalid_argument("quadrature orders must be >= 2");
  if (config.format != "csv" && config.format != "json")
    throw std::invalid_argument("format must be csv or json");
}

StudyResult run_study(const StudyConfig& config, std::ostream* progress) {
  validate(config);

  ManufacturedCase mcase;
  mcase.alpha = config.alpha;
  mcase.k_target = config.degree;
  const JumpData data = jump_data(mcase);
  const Coefficient coeff = Coefficient::identity();

  StudyResult result;
  TriMesh mesh = build_lshape(config.level_min);
  for (int level = config.level_min; level <= config.level_max; ++level) {
    const auto t0 = std::chrono::steady_clock::now();
    const BoundaryMesh bmesh = extract_boundary(mesh);
    const FeSpace fe = build_fe_space(mesh, config.degree);
    const TraceOperator trace = trace_restriction(fe, bmesh);
    const TraceSpace tspace = make_trace_space(bmesh, config.degree);
    const BemSpace mspace = make_bem_space(bmesh, config.degree);

    CoupledSystem sys = assemble_system(fe, trace, tspace, mspace, coeff, bmesh,
                                        config.quad_boundary);
    assemble_rhs(sys, fe, tspace, mspace, bmesh, data.f, data.u0, data.phi0,
                 config.mode, config.quad_volume, config.quad_boundary);
    const double t_assemble = seconds_since(t0);

    if (config.dump_mesh) {
      std::ofstream out(dump_path(config, "mesh", level));
      write_mesh(mesh, out);
    }
    if (config.dump_matrix) {
      std::ofstream out(dump_path(config, "matrix", level));
      write_system_matrix(sys, out);
    }

    const CoupledSolution sol = solve(sys);
    const double t_solve = seconds_since(t0) - t_assemble;

    ErrorReport report;
    report.level = level;
    report.h = mesh.mesh_size;
    report.ndof_fem = fe.num_dofs;
    report.ndof_bem = mspace.num_dofs;
    report.err_h1 = error_h1_semi(
        fe, sol.u, [&](const Eigen::Vector2d& x) { return interior_exact(mcase, x).grad; },
        config.quad_volume);
    report.err_l2 = error_l2(
        fe, sol.u, [&](const Eigen::Vector2d& x) { return interior_value(mcase, x); },
        config.quad_volume);
    report.err_strip = error_l2_strip(
        fe, sol.u, [&](const Eigen::Vector2d& x) { return interior_value(mcase, x); },
        boundary_strip(mesh), config.quad_volume);
    report.err_flux = error_flux_weighted(
        bmesh, mspace, sol.phi,
        [&](const Eigen::Vector2d& x, const Eigen::Vector2d& n) {
          return exact_flux(mcase, x, n);
        },
        mesh.mesh_size, config.quad_boundary);
    result.reports.push_back(report);

    if (progress) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "level %d: ndof_fem=%d ndof_bem=%d assemble=%.2fs solve=%.2fs "
                    "errors=%.2fs residual=%.2e\n",
                    level, report.ndof_fem, report.ndof_bem, t_assemble, t_solve,
                    seconds_since(t0) - t_assemble - t_solve, sol.residual);
      (*progress) << line << std::flush;
    }

    if (level < config.level_max) mesh = red_refine(mesh);
  }
  if (result.reports.size() >= 2) result.table = eoc(result.reports);
  return result;
}

std::string format_report_csv(const StudyResult& result) {
  std::string out = "level,h,ndof_fem,ndof_bem,err_h1,err_l2,err_strip,err_flux\n";
  for (const ErrorReport& r : result.reports) {
    out += std::to_string(r.level) + "," + fmt17(r.h) + "," +
           std::to_string(r.ndof_fem) + "," + std::to_string(r.ndof_bem) + "," +
           fmt17(r.err_h1) + "," + fmt17(r.err_l2) + "," + fmt17(r.err_strip) +
           "," + fmt17(r.err_flux) + "\n";
  }
  if (!result.table.rows.empty()) {
    out += "# eoc\n";
    out += "levels,eoc_h1,eoc_l2,eoc_strip,eoc_flux\n";
    for (const EocRow& row : result.table.rows) {
      out += std::to_string(row.level_from) + "-" + std::to_string(row.level_to) +
             "," + fmt17(row.eoc_h1) + "," + fmt17(row.eoc_l2) + "," +
             fmt17(row.eoc_strip) + "," + fmt17(row.eoc_flux) + "\n";
    }
  }
  return out;
}

std::string format_report_json(const StudyResult& result) {
  nlohmann::json j;
  j["reports"] = nlohmann::json::array();
  for (const ErrorReport& r : result.reports) {
    j["reports"].push_back({{"level", r.level},
                            {"h", r.h},
                            {"ndof_fem", r.ndof_fem},
                            {"ndof_bem", r.ndof_bem},
                            {"err_h1", r.err_h1},
                            {"err_l2", r.err_l2},
                            {"err_strip", r.err_strip},
                            {"err_flux", r.err_flux}});
  }
  j["eoc"] = nlohmann::json::array();
  for (const EocRow& row : result.table.rows) {
    j["eoc"].push_back({{"levels", std::to_string(row.level_from) + "-" +
                                       std::to_string(row.level_to)},
                        {"eoc_h1", row.eoc_h1},
                        {"eoc_l2", row.eoc_l2},
                        {"eoc_strip", row.eoc_strip},
                        {"eoc_flux", row.eoc_flux}});
  }
  return j.dump(2) + "\n";
}

void emit_report(const StudyResult& result, const StudyConfig& config,
                 std::ostream& fallback) {
  const std::string text = config.format == "json" ? format_report_json(result)
                                                   : format_report_csv(result);
  if (config.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(config.out, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot write " + config.out);
  out << text;
}

}  // namespace febem
