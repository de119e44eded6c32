#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "esvar/problem_spec.hpp"
#include "esvar/rng.hpp"

namespace esvar {

/// Hyperparameters of the (1, lambda)-ES. There is always exactly one
/// progenitor and sigma is constant for the whole run.
struct EsConfig {
  std::size_t lambda = 10;
  double sigma = 0.01;
  std::size_t iterations = 100000;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a non-positive field.
  void validate() const;
};

struct TraceRecord {
  std::size_t iteration;
  double best_objective;
  double gap;  // best_objective - reference

  bool operator==(const TraceRecord&) const = default;
};

struct RunTrace {
  double reference = 0.0;
  std::vector<TraceRecord> records;

  bool operator==(const RunTrace&) const = default;
};

struct EsState {
  Candidate progenitor;
  double progenitor_objective;
  Candidate best_ever;
  double best_objective;
  std::size_t iteration = 0;
  GaussianSource source;
};

struct EsResult {
  Candidate best;
  double best_objective;
  RunTrace trace;
};

/// offspring_i = parent_i + N(0, sigma^2) where mask_i is set. A draw is
/// consumed for every coordinate, masked or not, so the stream position does
/// not depend on the mask.
Candidate mutate(std::span<const double> parent, GaussianSource& source, double sigma,
                 const Mask& mask);

/// State seeded with the problem's initial candidate.
EsState make_initial_state(const ProblemSpec& problem, const EsConfig& config);

/// One generation: lambda mutants of the progenitor are repaired and scored,
/// and the lowest score (first on ties, NaN counts as +inf) becomes the new
/// progenitor. The old progenitor does not compete. The best-ever archive is
/// updated on strict improvement.
void step(EsState& state, const ProblemSpec& problem, const EsConfig& config);

/// Runs config.iterations generations. The trace holds iteration 1, every
/// strict improvement of the archive, every 100th iteration and the last one.
/// Returns the archive, not the final progenitor.
EsResult run(const ProblemSpec& problem, const EsConfig& config);

}  // namespace esvar
