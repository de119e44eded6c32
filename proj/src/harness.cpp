#include "esvar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace esvar {
namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

double interpolant_objective(const ProblemSpec& problem) {
  std::vector<PLFunction> curves;
  for (std::size_t k = 0; k < problem.grids.size(); ++k) {
    curves.push_back(sample_onto_grid(problem.reference_curves.at(k), problem.grids[k]));
  }
  return problem.objective(problem.encode(curves));
}

double max_abs_deviation(const ProblemSpec& problem, std::span<const double> candidate) {
  const std::vector<PLFunction> curves = problem.decode(candidate);
  double worst = 0.0;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    worst = std::max(worst, max_abs_deviation(curves[k], problem.reference_curves.at(k)));
  }
  return worst;
}

Experiment run_experiment(const ProblemSpec& problem, std::size_t segments,
                          const EsConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  EsResult es = run(problem, config);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  RunResult r;
  r.problem = problem.name;
  r.lambda = config.lambda;
  r.sigma = config.sigma;
  r.iterations = config.iterations;
  r.seed = config.seed;
  r.segments = segments;
  r.best_objective = es.best_objective;
  r.reference_objective = problem.reference_objective;
  r.interpolant_objective = interpolant_objective(problem);
  r.relative_error = relative_error(es.best_objective, problem.reference_objective);
  r.max_abs_deviation = max_abs_deviation(problem, es.best);
  r.wall_time = elapsed.count();
  std::vector<PLFunction> curves = problem.decode(es.best);
  return {std::move(r), std::move(es), std::move(curves)};
}

nlohmann::json to_json(const RunResult& r, bool include_wall_time) {
  nlohmann::json j{
      {"problem", r.problem},
      {"lambda", r.lambda},
      {"sigma", r.sigma},
      {"iterations", r.iterations},
      {"seed", r.seed},
      {"segments", r.segments},
      {"best_objective", r.best_objective},
      {"reference_objective", r.reference_objective},
      {"interpolant_objective", r.interpolant_objective},
      {"relative_error", r.relative_error},
      {"max_abs_deviation", r.max_abs_deviation},
  };
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

RunResult run_result_from_json(const nlohmann::json& j) {
  RunResult r;
  j.at("problem").get_to(r.problem);
  j.at("lambda").get_to(r.lambda);
  j.at("sigma").get_to(r.sigma);
  j.at("iterations").get_to(r.iterations);
  j.at("seed").get_to(r.seed);
  j.at("segments").get_to(r.segments);
  j.at("best_objective").get_to(r.best_objective);
  j.at("reference_objective").get_to(r.reference_objective);
  j.at("interpolant_objective").get_to(r.interpolant_objective);
  j.at("relative_error").get_to(r.relative_error);
  j.at("max_abs_deviation").get_to(r.max_abs_deviation);
  r.wall_time = j.value("wall_time", 0.0);
  return r;
}

std::string format_trace_csv(const RunTrace& trace, double reference) {
  std::string out = "iteration,best_objective,gap,log10_iteration,log10_gap\n";
  for (const TraceRecord& rec : trace.records) {
    const double gap = rec.best_objective - reference;
    out += std::to_string(rec.iteration);
    out += ',' + fmt_g17(rec.best_objective);
    out += ',' + fmt_g17(gap);
    out += ',' + fmt_g17(std::log10(static_cast<double>(rec.iteration)));
    out += ',';
    if (gap > 0.0) out += fmt_g17(std::log10(gap));
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_trace_csv(const RunTrace& trace, double reference, const std::filesystem::path& path) {
  if (!std::isfinite(reference)) throw std::invalid_argument("write_trace_csv: reference must be finite");
  write_text_file(path, format_trace_csv(trace, reference));
}

std::vector<PlotPoint> log_gap_points(const RunTrace& trace, double reference) {
  std::vector<PlotPoint> points;
  for (const TraceRecord& rec : trace.records) {
    const double gap = rec.best_objective - reference;
    if (gap > 0.0 && std::isfinite(gap)) {
      points.push_back({std::log10(static_cast<double>(rec.iteration)), std::log10(gap)});
    }
  }
  return points;
}

std::string render_svg_plot(std::span<const PlotPoint> points, const std::string& title) {
  if (points.size() < 2) throw std::invalid_argument("render_svg_plot: need at least two points");
  for (const PlotPoint& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("render_svg_plot: non-finite point");
    }
  }
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
  const auto [xmin_it, xmax_it] = std::minmax_element(
      points.begin(), points.end(), [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
  const auto [ymin_it, ymax_it] = std::minmax_element(
      points.begin(), points.end(), [](const PlotPoint& a, const PlotPoint& b) { return a.y < b.y; });
  double x0 = std::floor(xmin_it->x), x1 = std::ceil(xmax_it->x);
  double y0 = std::floor(ymin_it->y), y1 = std::ceil(ymax_it->y);
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << fmt_fixed(kWidth / 2, 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(title) << "</text>\n";
  }
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << fmt_fixed(kLeft, 2) << "\" y=\"" << fmt_fixed(kTop, 2) << "\" width=\""
      << fmt_fixed(plot_w, 2) << "\" height=\"" << fmt_fixed(plot_h, 2) << "\"/>\n";
  const int x_steps = static_cast<int>(std::lround(x1 - x0));
  const int y_steps = static_cast<int>(std::lround(y1 - y0));
  for (int i = 0; i <= x_steps; ++i) {
    const double px = sx(x0 + i);
    svg << "<line x1=\"" << fmt_fixed(px, 2) << "\" y1=\"" << fmt_fixed(kTop + plot_h, 2)
        << "\" x2=\"" << fmt_fixed(px, 2) << "\" y2=\"" << fmt_fixed(kTop + plot_h + 5, 2)
        << "\"/>\n";
  }
  for (int i = 0; i <= y_steps; ++i) {
    const double py = sy(y0 + i);
    svg << "<line x1=\"" << fmt_fixed(kLeft - 5, 2) << "\" y1=\"" << fmt_fixed(py, 2)
        << "\" x2=\"" << fmt_fixed(kLeft, 2) << "\" y2=\"" << fmt_fixed(py, 2) << "\"/>\n";
  }
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= x_steps; ++i) {
    svg << "<text x=\"" << fmt_fixed(sx(x0 + i), 2) << "\" y=\""
        << fmt_fixed(kTop + plot_h + 20, 2) << "\" text-anchor=\"middle\">"
        << fmt_fixed(x0 + i, 0) << "</text>\n";
  }
  for (int i = 0; i <= y_steps; ++i) {
    svg << "<text x=\"" << fmt_fixed(kLeft - 8, 2) << "\" y=\"" << fmt_fixed(sy(y0 + i) + 4, 2)
        << "\" text-anchor=\"end\">" << fmt_fixed(y0 + i, 0) << "</text>\n";
  }
  svg << "<text x=\"" << fmt_fixed(kLeft + plot_w / 2, 2) << "\" y=\"" << fmt_fixed(kHeight - 12, 2)
      << "\" text-anchor=\"middle\">log10(iteration)</text>\n"
      << "<text x=\"18\" y=\"" << fmt_fixed(kTop + plot_h / 2, 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fmt_fixed(kTop + plot_h / 2, 2)
      << ")\">log10(gap)</text>\n</g>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) svg << ' ';
    svg << fmt_fixed(sx(points[i].x), 2) << ',' << fmt_fixed(sy(points[i].y), 2);
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TableRow aggregate(std::span<const RunResult> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  TableRow row;
  row.problem = runs.front().problem;
  row.runs = runs.size();
  row.reference = runs.front().reference_objective;
  row.interpolant = runs.front().interpolant_objective;
  std::vector<double> best, dev, rel;
  for (const RunResult& r : runs) {
    if (r.problem != row.problem) throw std::invalid_argument("aggregate: mixed problems");
    best.push_back(r.best_objective);
    dev.push_back(r.max_abs_deviation);
    rel.push_back(r.relative_error);
  }
  row.median_best = median(best);
  row.median_max_abs_deviation = median(dev);
  row.median_relative_error = median(rel);
  return row;
}

std::string format_table_text(std::span<const TableRow> rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %5s %12s %12s %12s %14s %12s\n", "problem", "runs",
                "reference", "interpolant", "median_best", "max|Y_k-y_k|", "r(T_Y,T_y)");
  out << line;
  for (const TableRow& r : rows) {
    std::snprintf(line, sizeof line, "%-16s %5zu %12.6f %12.6f %12.6f %14.4f %12.5f\n",
                  r.problem.c_str(), r.runs, r.reference, r.interpolant, r.median_best,
                  r.median_max_abs_deviation, r.median_relative_error);
    out << line;
  }
  return out.str();
}

std::string format_table_csv(std::span<const TableRow> rows) {
  std::string out =
      "problem,runs,reference,interpolant,median_best,median_max_abs_deviation,"
      "median_relative_error\n";
  for (const TableRow& r : rows) {
    out += r.problem + ',' + std::to_string(r.runs) + ',' + fmt_g17(r.reference) + ',' +
           fmt_g17(r.interpolant) + ',' + fmt_g17(r.median_best) + ',' +
           fmt_g17(r.median_max_abs_deviation) + ',' + fmt_g17(r.median_relative_error) + '\n';
  }
  return out;
}

}  // namespace esvar
