// esvar: run the (1, lambda)-ES on the variational test problems, print exact
// reference solutions, and rebuild the summary table.
//
//   esvar run   --problem ramm --seed 1 --out runs/ramm
//   esvar exact --problem newton --r 1 --height 2
//   esvar table --seeds 1,2,3,4,5 --out table

#include <CLI11.hpp>
#include <atomic>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "esvar/exact_solutions.hpp"
#include "esvar/harness.hpp"
#include "esvar/problems.hpp"

namespace fs = std::filesystem;
using esvar::EsConfig;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct RunFlags {
  std::string problem;
  std::optional<std::size_t> segments;
  std::optional<double> sigma;
  std::size_t lambda = 10;
  std::size_t iters = 100000;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool wall_time = false;
};

struct ExactFlags {
  std::string problem;
  double ax = 0.0, ay = 10.0, bx = 10.0, by = 0.0;
  double b = 2.0;
  double r = 1.0, height = 2.0;
  double g = esvar::kStandardGravity;
  std::optional<std::size_t> segments;
};

struct TableFlags {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t iters = 100000;
  std::string out = "table";
  std::size_t jobs = 0;
};

std::string solution_csv(const esvar::ProblemSpec& problem, const esvar::Experiment& ex) {
  std::string out = "curve,x,y,reference_y\n";
  char line[160];
  for (std::size_t k = 0; k < ex.best_curves.size(); ++k) {
    const esvar::PLFunction& f = ex.best_curves[k];
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = f.grid().node(i);
      std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", k, x, f[i],
                    problem.reference_curves[k](x));
      out += line;
    }
  }
  return out;
}

int cmd_run(const RunFlags& flags) {
  const esvar::ProblemDefaults defaults = esvar::problem_defaults(flags.problem);
  const std::size_t segments = flags.segments.value_or(defaults.segments);
  const EsConfig config{flags.lambda, flags.sigma.value_or(defaults.sigma), flags.iters, flags.seed};
  config.validate();
  const esvar::ProblemSpec problem = esvar::make_problem(flags.problem, segments);

  const fs::path dir(flags.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "error: cannot create output directory " << dir << '\n';
    return kExitIo;
  }

  const esvar::Experiment ex = esvar::run_experiment(problem, segments, config);
  try {
    esvar::write_trace_csv(ex.es.trace, problem.reference_objective, dir / "trace.csv");
    esvar::write_text_file(dir / "result.json", esvar::to_json(ex.result, flags.wall_time).dump(2) + "\n");
    esvar::write_text_file(dir / "solution.csv", solution_csv(problem, ex));
    const auto points = esvar::log_gap_points(ex.es.trace, problem.reference_objective);
    if (points.size() >= 2) {
      esvar::write_text_file(dir / "trace.svg", esvar::render_svg_plot(points, problem.name));
    } else {
      std::cerr << "warning: fewer than two positive gaps, trace.svg not written\n";
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  const esvar::RunResult& r = ex.result;
  std::printf("problem            %s\n", r.problem.c_str());
  std::printf("config             lambda=%zu sigma=%g iterations=%zu seed=%llu segments=%zu\n",
              r.lambda, r.sigma, r.iterations, static_cast<unsigned long long>(r.seed), r.segments);
  std::printf("best objective     %.6f\n", r.best_objective);
  std::printf("reference          %.6f\n", r.reference_objective);
  std::printf("interpolant        %.6f\n", r.interpolant_objective);
  std::printf("relative error     %.6f\n", r.relative_error);
  std::printf("max |Y_k - y_k|    %.6f\n", r.max_abs_deviation);
  std::printf("wall time          %.2f s\n", r.wall_time);
  return 0;
}

nlohmann::json exact_report(const ExactFlags& f) {
  using nlohmann::json;
  if (f.problem == "brachistochrone") {
    const auto sol = esvar::solve_cycloid({f.ax, f.ay}, {f.bx, f.by}, f.g);
    const auto problem =
        esvar::make_brachistochrone(f.segments.value_or(20), {f.ax, f.ay}, {f.bx, f.by}, f.g);
    return {{"problem", f.problem},  {"radius", sol.radius},
            {"theta_end", sol.theta_end}, {"time", sol.time},
            {"g", f.g},              {"interpolant_time", esvar::interpolant_objective(problem)},
            {"segments", f.segments.value_or(20)}};
  }
  if (f.problem == "ramm") {
    const auto ref = esvar::ramm_reference(f.b);
    json j{{"problem", f.problem}, {"b", f.b},          {"t0", ref.t0},
           {"tp", ref.tp},         {"tpbr", ref.tpbr}, {"case", ref.case_id}};
    const auto problem = esvar::make_ramm(f.b, f.segments.value_or(20), f.g);
    j["reference_time"] = problem.reference_objective;
    if (f.b > std::numbers::pi / 2.0) j["t_br"] = esvar::ramm_conjectured_curve(f.b, f.g).time;
    j["interpolant_time"] = esvar::interpolant_objective(problem);
    j["segments"] = f.segments.value_or(20);
    return j;
  }
  if (f.problem == "newton") {
    const auto p = esvar::solve_newton_profile(f.r, f.height);
    const auto problem = esvar::make_newton(f.r, f.height, f.segments.value_or(20));
    return {{"problem", f.problem},
            {"r", f.r},
            {"height", f.height},
            {"lambda", p.lambda_n},
            {"u_max", p.u_max},
            {"resistance", esvar::newton_exact_resistance(p)},
            {"interpolant_resistance", esvar::interpolant_objective(problem)},
            {"segments", f.segments.value_or(20)}};
  }
  if (f.problem == "thermal") {
    const auto ref = esvar::thermal_reference(f.height);
    return {{"problem", f.problem},      {"h", ref.h},         {"u_star", ref.u_star},
            {"u_minus0", ref.u_minus0}, {"case", ref.case_id}, {"resistance", ref.resistance}};
  }
  throw std::invalid_argument("unknown problem: " + f.problem);
}

int cmd_table(const TableFlags& flags) {
  const fs::path dir(flags.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "error: cannot create output directory " << dir << '\n';
    return kExitIo;
  }
  struct Job {
    std::string problem;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const std::string& name : esvar::problem_names()) {
    for (std::uint64_t seed : flags.seeds) jobs.push_back({name, seed});
  }
  std::vector<esvar::RunResult> results(jobs.size());
  const std::size_t workers =
      std::max<std::size_t>(1, flags.jobs ? flags.jobs : std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto defaults = esvar::problem_defaults(jobs[i].problem);
      const auto problem = esvar::make_problem(jobs[i].problem, defaults.segments);
      const EsConfig config{10, defaults.sigma, flags.iters, jobs[i].seed};
      results[i] = esvar::run_experiment(problem, defaults.segments, config).result;
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<esvar::TableRow> rows;
  for (const std::string& name : esvar::problem_names()) {
    std::vector<esvar::RunResult> mine;
    for (const auto& r : results) {
      if (r.problem == name) mine.push_back(r);
    }
    rows.push_back(esvar::aggregate(mine));
  }
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : results) runs.push_back(esvar::to_json(r));
  try {
    esvar::write_text_file(dir / "table.txt", esvar::format_table_text(rows));
    esvar::write_text_file(dir / "table.csv", esvar::format_table_csv(rows));
    esvar::write_text_file(dir / "runs.json", runs.dump(2) + "\n");
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  std::cout << esvar::format_table_text(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution-strategy solver for piecewise-linear variational problems"};
  app.require_subcommand(1);
  const std::vector<std::string>& names = esvar::problem_names();

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run one seeded ES experiment");
  run->add_option("--problem", run_flags.problem, "Problem name")
      ->required()
      ->check(CLI::IsMember(names));
  run->add_option("--segments", run_flags.segments, "Number of segments (default 20, thermal 31)")
      ->check(CLI::PositiveNumber);
  run->add_option("--sigma", run_flags.sigma, "Mutation std dev (default 0.01, ramm 0.001)")
      ->check(CLI::PositiveNumber);
  run->add_option("--lambda", run_flags.lambda, "Offspring per generation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--iters", run_flags.iters, "Generations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--seed", run_flags.seed, "RNG seed")->capture_default_str();
  run->add_option("--out", run_flags.out, "Output directory")->capture_default_str();
  run->add_flag("--wall-time", run_flags.wall_time, "Include wall_time in result.json");

  ExactFlags exact_flags;
  auto* exact = app.add_subcommand("exact", "Print the exact reference solution as JSON");
  exact->add_option("--problem", exact_flags.problem, "Problem name")
      ->required()
      ->check(CLI::IsMember(names));
  exact->add_option("--ax", exact_flags.ax, "brachistochrone: start x")->capture_default_str();
  exact->add_option("--ay", exact_flags.ay, "brachistochrone: start y")->capture_default_str();
  exact->add_option("--bx", exact_flags.bx, "brachistochrone: end x")->capture_default_str();
  exact->add_option("--by", exact_flags.by, "brachistochrone: end y")->capture_default_str();
  exact->add_option("--b", exact_flags.b, "ramm: end abscissa")->capture_default_str();
  exact->add_option("--r", exact_flags.r, "newton: body radius")->capture_default_str();
  exact->add_option("--height", exact_flags.height, "newton, thermal: body height")
      ->capture_default_str();
  exact->add_option("--g", exact_flags.g, "gravity")->capture_default_str();
  exact->add_option("--segments", exact_flags.segments, "Grid for interpolant values")
      ->check(CLI::PositiveNumber);

  TableFlags table_flags;
  auto* table = app.add_subcommand("table", "Median results over seeds for all problems");
  table->add_option("--seeds", table_flags.seeds, "Comma-separated seeds")
      ->delimiter(',')
      ->capture_default_str();
  table->add_option("--iters", table_flags.iters, "Generations per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table->add_option("--out", table_flags.out, "Output directory")->capture_default_str();
  table->add_option("--jobs", table_flags.jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*exact) {
      std::cout << exact_report(exact_flags).dump(2) << '\n';
      return 0;
    }
    if (*table) return cmd_table(table_flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
