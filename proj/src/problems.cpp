#include "esvar/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "esvar/es_engine.hpp"
#include "esvar/functionals.hpp"

namespace esvar {
namespace {

constexpr double kFeasibilityTol = 1e-12;

std::vector<double> straight_line(const Grid& grid, double y_start, double y_end) {
  std::vector<double> y(grid.n_points());
  const double span = grid.x_end() - grid.x_start();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = (grid.node(i) - grid.x_start()) / span;
    y[i] = y_start + t * (y_end - y_start);
  }
  y.front() = y_start;
  y.back() = y_end;
  return y;
}

Mask interior_mask(std::size_t n) {
  Mask mask(n, true);
  mask.front() = false;
  mask.back() = false;
  return mask;
}

bool within(std::span<const double> y, double lower, double upper) {
  return std::all_of(y.begin(), y.end(), [&](double v) {
    return v >= lower - kFeasibilityTol && v <= upper + kFeasibilityTol;
  });
}

// Decode/encode for problems whose candidate is one curve's node heights.
void attach_single_curve_codec(ProblemSpec& spec) {
  const Grid grid = spec.grids.front();
  spec.decode = [grid](std::span<const double> c) {
    return std::vector<PLFunction>{PLFunction(grid, {c.begin(), c.end()})};
  };
  spec.encode = [](const std::vector<PLFunction>& curves) { return curves.at(0).y(); };
}

}  // namespace

ProblemSpec make_brachistochrone(std::size_t n_segments, Point a, Point b, double g) {
  if (n_segments < 2) throw std::invalid_argument("brachistochrone: need at least 2 segments");
  const CycloidSolution cycloid = solve_cycloid(a, b, g);
  const Grid grid(a.x, b.x, n_segments + 1);

  ProblemSpec spec;
  spec.name = "brachistochrone";
  spec.grids = {grid};
  spec.chord = straight_line(grid, a.y, b.y);
  spec.mutable_mask = interior_mask(grid.n_points());
  spec.repair = [y0 = a.y, y1 = b.y](std::span<double> c) { repair::pin_endpoints(c, y0, y1); };
  spec.objective = [grid, g, release = a.y](std::span<const double> c) {
    return descent_time(PLFunction(grid, {c.begin(), c.end()}), g, release);
  };
  spec.is_feasible = [y0 = a.y, y1 = b.y](std::span<const double> c) {
    return c.front() == y0 && c.back() == y1;
  };
  attach_single_curve_codec(spec);
  spec.reference_curves = {cycloid_sampler(cycloid)};
  spec.reference_objective = cycloid.time;
  return spec;
}

ProblemSpec make_ramm(double b, std::size_t n_segments, double g) {
  if (!(b > 0.0)) throw std::invalid_argument("ramm: b must be positive");
  if (n_segments < 2) throw std::invalid_argument("ramm: need at least 2 segments");
  const Grid grid(0.0, b, n_segments + 1);
  const std::vector<double> chord = straight_line(grid, 1.0, 0.0);
  const std::vector<double> floor(grid.n_points(), 0.0);

  ProblemSpec spec;
  spec.name = "ramm";
  spec.grids = {grid};
  spec.chord = chord;
  spec.mutable_mask = interior_mask(grid.n_points());
  spec.repair = [chord, floor](std::span<double> c) {
    repair::pin_endpoints(c, 1.0, 0.0);
    // The last clamp can move a hull node by an ulp; repeating until nothing
    // moves makes the pipeline idempotent.
    std::vector<double> previous;
    for (int pass = 0; pass < 16; ++pass) {
      previous.assign(c.begin(), c.end());
      repair::clamp_box(c, floor, chord);
      repair::convex_minorant(c);
      repair::clamp_box(c, floor, chord);
      if (std::equal(c.begin(), c.end(), previous.begin())) break;
    }
  };
  spec.objective = [grid, g](std::span<const double> c) {
    return ramm_time(PLFunction(grid, {c.begin(), c.end()}), g);
  };
  spec.is_feasible = [chord](std::span<const double> c) {
    if (c.front() != 1.0 || c.back() != 0.0) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0.0 || c[i] > chord[i] + kFeasibilityTol) return false;
    }
    return has_nondecreasing_slopes(c, kFeasibilityTol);
  };
  attach_single_curve_codec(spec);
  if (b > std::numbers::pi / 2.0) {
    RammConjecture conjecture = ramm_conjectured_curve(b, g);
    spec.reference_curves = {std::move(conjecture.curve)};
    spec.reference_objective = conjecture.time;
  } else {
    const CycloidSolution cycloid = solve_cycloid({0.0, 1.0}, {b, 0.0}, g);
    spec.reference_curves = {cycloid_sampler(cycloid)};
    spec.reference_objective = cycloid.time;
  }
  return spec;
}

ProblemSpec make_newton(double r, double height, std::size_t n_segments) {
  if (n_segments < 1) throw std::invalid_argument("newton: need at least 1 segment");
  const NewtonProfile profile = solve_newton_profile(r, height);
  const Grid grid(0.0, r, n_segments + 1);

  ProblemSpec spec;
  spec.name = "newton";
  spec.grids = {grid};
  spec.chord = straight_line(grid, 0.0, height);
  spec.mutable_mask = interior_mask(grid.n_points());
  spec.repair = [height](std::span<double> c) {
    repair::pin_endpoints(c, 0.0, height);
    repair::clamp_box(c, 0.0, height);
    repair::monotone(c);
    repair::pin_endpoints(c, 0.0, height);
  };
  spec.objective = [grid](std::span<const double> c) {
    return newton_resistance(PLFunction(grid, {c.begin(), c.end()}));
  };
  spec.is_feasible = [height](std::span<const double> c) {
    return c.front() == 0.0 && c.back() == height && within(c, 0.0, height) &&
           is_nondecreasing(c);
  };
  attach_single_curve_codec(spec);
  spec.reference_curves = {newton_sampler(profile)};
  spec.reference_objective = newton_exact_resistance(profile);
  return spec;
}

ProblemSpec make_thermal(double h, std::size_t n_segments) {
  const ThermalReference reference = thermal_reference(h);
  if (n_segments < 2) throw std::invalid_argument("thermal: need at least 2 segments");
  const Grid front_grid(0.0, 1.0, (n_segments + 1) / 2 + 1);
  const Grid rear_grid(0.0, 1.0, n_segments / 2 + 1);
  const std::size_t nf = front_grid.n_points();
  const std::size_t nr = rear_grid.n_points();
  const std::size_t gene = nf + nr;

  ProblemSpec spec;
  spec.name = "thermal";
  spec.grids = {front_grid, rear_grid};

  spec.chord = straight_line(front_grid, 0.0, h / 2.0);
  const std::vector<double> rear_chord = straight_line(rear_grid, 0.0, h / 2.0);
  spec.chord.insert(spec.chord.end(), rear_chord.begin(), rear_chord.end());
  spec.chord.push_back(h / 2.0);

  spec.mutable_mask = interior_mask(nf);
  const Mask rear_mask = interior_mask(nr);
  spec.mutable_mask.insert(spec.mutable_mask.end(), rear_mask.begin(), rear_mask.end());
  spec.mutable_mask.push_back(true);

  spec.repair = [h, nf, nr, gene](std::span<double> c) {
    const double h_plus = std::clamp(c[gene], 0.0, h);
    c[gene] = h_plus;
    // The fixed end nodes still carry the parent's heights, so a change of
    // h_plus rescales each profile instead of shearing its last segment.
    auto fix = [](std::span<double> curve, double top) {
      const double previous = curve.back();
      if (previous > 0.0 && previous != top) {
        const double scale = top / previous;
        for (double& v : curve) v *= scale;
      }
      repair::pin_endpoints(curve, 0.0, top);
      repair::clamp_box(curve, 0.0, top);
      repair::monotone(curve);
    };
    fix(c.subspan(0, nf), h_plus);
    fix(c.subspan(nf, nr), h - h_plus);
  };
  const FluxPair flux = FluxPair::two_dimensional();
  spec.decode = [front_grid, rear_grid, nf, nr](std::span<const double> c) {
    const auto front = c.subspan(0, nf);
    const auto rear = c.subspan(nf, nr);
    return std::vector<PLFunction>{PLFunction(front_grid, {front.begin(), front.end()}),
                                   PLFunction(rear_grid, {rear.begin(), rear.end()})};
  };
  spec.encode = [](const std::vector<PLFunction>& curves) {
    Candidate c = curves.at(0).y();
    c.insert(c.end(), curves.at(1).y().begin(), curves.at(1).y().end());
    c.push_back(curves.at(0).y().back());
    return c;
  };
  spec.objective = [decode = spec.decode, flux](std::span<const double> c) {
    const std::vector<PLFunction> curves = decode(c);
    return thermal_resistance(curves[0], curves[1], flux);
  };
  spec.is_feasible = [h, nf, nr, gene](std::span<const double> c) {
    const double h_plus = c[gene];
    if (h_plus < 0.0 || h_plus > h) return false;
    auto ok = [](std::span<const double> curve, double top) {
      return curve.front() == 0.0 && curve.back() == top && within(curve, 0.0, top) &&
             is_nondecreasing(curve);
    };
    return ok(c.subspan(0, nf), h_plus) && ok(c.subspan(nf, nr), h - h_plus);
  };

  ThermalShape shape = thermal_reference_shape(reference);
  spec.reference_curves = {std::move(shape.front), std::move(shape.rear)};
  spec.reference_objective = reference.resistance;
  return spec;
}

Candidate initial_candidate(const ProblemSpec& problem, GaussianSource& source, double sigma) {
  Candidate c = mutate(problem.chord, source, sigma, problem.mutable_mask);
  problem.repair(c);
  return c;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"brachistochrone", "ramm", "newton", "thermal"};
  return names;
}

ProblemDefaults problem_defaults(std::string_view name) {
  if (name == "brachistochrone") return {20, 0.01};
  if (name == "ramm") return {20, 0.001};
  if (name == "newton") return {20, 0.01};
  if (name == "thermal") return {31, 0.01};
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

ProblemSpec make_problem(std::string_view name, std::size_t n_segments) {
  if (name == "brachistochrone") return make_brachistochrone(n_segments);
  if (name == "ramm") return make_ramm(2.0, n_segments);
  if (name == "newton") return make_newton(1.0, 2.0, n_segments);
  if (name == "thermal") return make_thermal(2.0, n_segments);
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

}  // namespace esvar
