#include "esvar/es_engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "esvar/problems.hpp"

namespace esvar {
namespace {

constexpr std::size_t kTraceCadence = 100;

double score(const ProblemSpec& problem, std::span<const double> candidate) {
  const double value = problem.objective(candidate);
  return std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
}

}  // namespace

void EsConfig::validate() const {
  if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be > 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
}

Candidate mutate(std::span<const double> parent, GaussianSource& source, double sigma,
                 const Mask& mask) {
  if (mask.size() != parent.size()) throw std::invalid_argument("mutate: mask length mismatch");
  Candidate child(parent.begin(), parent.end());
  for (std::size_t i = 0; i < child.size(); ++i) {
    const double noise = sigma * source.next_standard_normal();
    if (mask[i]) child[i] += noise;
  }
  return child;
}

EsState make_initial_state(const ProblemSpec& problem, const EsConfig& config) {
  GaussianSource source(config.seed);
  Candidate start = initial_candidate(problem, source, config.sigma);
  const double value = score(problem, start);
  return EsState{start, value, start, value, 0, source};
}

void step(EsState& state, const ProblemSpec& problem, const EsConfig& config) {
  // All noise is drawn in offspring order before any evaluation.
  std::vector<Candidate> offspring;
  offspring.reserve(config.lambda);
  for (std::size_t c = 0; c < config.lambda; ++c) {
    offspring.push_back(mutate(state.progenitor, state.source, config.sigma, problem.mutable_mask));
  }
  std::size_t winner = 0;
  double winner_value = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < offspring.size(); ++c) {
    problem.repair(offspring[c]);
    const double value = score(problem, offspring[c]);
    if (value < winner_value) {
      winner = c;
      winner_value = value;
    }
  }
  state.progenitor = std::move(offspring[winner]);
  state.progenitor_objective = winner_value;
  if (winner_value < state.best_objective) {
    state.best_ever = state.progenitor;
    state.best_objective = winner_value;
  }
  ++state.iteration;
}

EsResult run(const ProblemSpec& problem, const EsConfig& config) {
  config.validate();
  EsState state = make_initial_state(problem, config);
  RunTrace trace{problem.reference_objective, {}};
  auto record = [&] {
    trace.records.push_back(
        {state.iteration, state.best_objective, state.best_objective - problem.reference_objective});
  };
  for (std::size_t k = 1; k <= config.iterations; ++k) {
    const double before = state.best_objective;
    step(state, problem, config);
    if (k == 1 || state.best_objective < before || k % kTraceCadence == 0 ||
        k == config.iterations) {
      record();
    }
  }
  return {std::move(state.best_ever), state.best_objective, std::move(trace)};
}

}  // namespace esvar
