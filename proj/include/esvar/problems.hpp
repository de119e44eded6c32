#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "esvar/exact_solutions.hpp"
#include "esvar/problem_spec.hpp"
#include "esvar/rng.hpp"

namespace esvar {

/// Fastest descent from a to b. Candidate = node heights; endpoints pinned.
ProblemSpec make_brachistochrone(std::size_t n_segments, Point a = {0.0, 10.0},
                                 Point b = {10.0, 0.0}, double g = kStandardGravity);

/// Descent from (0,1) to (b,0) over convex curves with 0 <= y <= 1 - x/b.
/// Repair: pin, then clamp to [0, chord], lower convex hull and clamp again,
/// repeated until no node moves.
ProblemSpec make_ramm(double b, std::size_t n_segments, double g = kStandardGravity);

/// Newton's body of least resistance: y(0) = 0, y(r) = H, y nondecreasing.
/// Repair: pin, clamp to [0, H], running max, pin.
ProblemSpec make_newton(double r, double height, std::size_t n_segments);

/// Two-dimensional body in a rarefied medium of total height h.
///
/// The candidate packs the front profile (ceil(n/2) segments on [0,1]), the
/// rear profile (floor(n/2) segments on [0,1]) and a trailing front-height
/// gene h_plus:
///   [front_0 .. front_F | rear_0 .. rear_R | h_plus]
/// Repair clamps h_plus to [0, h]; each profile is then scaled by the ratio of
/// its new top height to the height held in its last node, pinned, clamped and
/// monotone-repaired (front on [0, h_plus], rear on [0, h - h_plus]).
ProblemSpec make_thermal(double h, std::size_t n_segments = 31);

/// The chord plus one N(0, sigma^2) perturbation of the mutable coordinates,
/// repaired.
Candidate initial_candidate(const ProblemSpec& problem, GaussianSource& source, double sigma);

/// Paper-instance defaults used by the command line.
struct ProblemDefaults {
  std::size_t segments;
  double sigma;
};

const std::vector<std::string>& problem_names();
/// Throws std::invalid_argument for an unknown name.
ProblemDefaults problem_defaults(std::string_view name);
/// Builds the named problem at its standard instance:
/// brachistochrone (0,10)->(10,0); ramm b = 2; newton r = 1, H = 2; thermal h = 2.
ProblemSpec make_problem(std::string_view name, std::size_t n_segments);

}  // namespace esvar
