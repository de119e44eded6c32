#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "esvar/plfunc.hpp"

namespace esvar {

/// Flat search vector the ES mutates. Its layout is owned by the problem.
using Candidate = std::vector<double>;
/// true where the ES may perturb a coordinate.
using Mask = std::vector<bool>;

/// Everything the ES needs to know about one variational problem.
struct ProblemSpec {
  std::string name;
  // One grid per decoded curve.
  std::vector<Grid> grids;
  Mask mutable_mask;
  // Straight line between the boundary values, before repair.
  Candidate chord;

  // In place; idempotent; output satisfies is_feasible.
  std::function<void(std::span<double>)> repair;
  std::function<double(std::span<const double>)> objective;
  std::function<bool(std::span<const double>)> is_feasible;

  std::function<std::vector<PLFunction>(std::span<const double>)> decode;
  std::function<Candidate(const std::vector<PLFunction>&)> encode;

  // Continuous optimum: one curve per grid, and its objective value.
  std::vector<CurveSampler> reference_curves;
  double reference_objective = 0.0;

  std::size_t dimension() const { return chord.size(); }
};

}  // namespace esvar
