#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "esvar/es_engine.hpp"
#include "esvar/problem_spec.hpp"

namespace esvar {

/// Summary of one seeded run; serialized as result.json.
struct RunResult {
  std::string problem;
  std::size_t lambda = 0;
  double sigma = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t segments = 0;
  double best_objective = 0.0;
  double reference_objective = 0.0;
  double interpolant_objective = 0.0;
  double relative_error = 0.0;
  double max_abs_deviation = 0.0;
  double wall_time = 0.0;  // seconds

  bool operator==(const RunResult&) const = default;
};

struct Experiment {
  RunResult result;
  EsResult es;
  std::vector<PLFunction> best_curves;
};

double relative_error(double value, double reference);

/// Objective of the continuous optimum sampled at the problem's grid nodes.
double interpolant_objective(const ProblemSpec& problem);

/// Largest node-wise distance between a candidate's curves and the optimum.
double max_abs_deviation(const ProblemSpec& problem, std::span<const double> candidate);

Experiment run_experiment(const ProblemSpec& problem, std::size_t segments, const EsConfig& config);

/// result.json body. wall_time is omitted unless requested so that identical
/// flags produce identical files.
nlohmann::json to_json(const RunResult& r, bool include_wall_time = false);
RunResult run_result_from_json(const nlohmann::json& j);

/// trace.csv body: header `iteration,best_objective,gap,log10_iteration,log10_gap`,
/// gap = best_objective - reference, log10_gap left empty when gap <= 0.
std::string format_trace_csv(const RunTrace& trace, double reference);
/// Throws std::runtime_error if the file cannot be written.
void write_trace_csv(const RunTrace& trace, double reference, const std::filesystem::path& path);

struct PlotPoint {
  double x;
  double y;
};

/// (log10_iteration, log10_gap) rows of the trace with a positive gap.
std::vector<PlotPoint> log_gap_points(const RunTrace& trace, double reference);

/// Standalone SVG line chart of log10 gap against log10 iteration. Throws
/// std::invalid_argument for fewer than two points or non-finite values.
std::string render_svg_plot(std::span<const PlotPoint> points, const std::string& title = "");

/// Median-over-seeds row of the results table.
struct TableRow {
  std::string problem;
  std::size_t runs = 0;
  double reference = 0.0;
  double interpolant = 0.0;
  double median_best = 0.0;
  double median_max_abs_deviation = 0.0;
  double median_relative_error = 0.0;
};

double median(std::vector<double> values);

/// All results must share one problem.
TableRow aggregate(std::span<const RunResult> runs);
std::string format_table_text(std::span<const TableRow> rows);
std::string format_table_csv(std::span<const TableRow> rows);

void write_text_file(const std::filesystem::path& path, const std::string& body);

}  // namespace esvar
