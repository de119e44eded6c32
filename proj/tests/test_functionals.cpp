#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "esvar/functionals.hpp"
#include "esvar/harness.hpp"
#include "esvar/problems.hpp"
#include "support.hpp"

using namespace esvar;
using esvar::testing::uniform_vector;

namespace {

constexpr double g = kStandardGravity;

// Oracle integrals, one quadrature per segment in the local variable
// t = x - x_i so the release-point singularity sits exactly at t = 0.
double descent_integral(const PLFunction& f, double release) {
  const Grid& grid = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double dx = grid.node(i + 1) - grid.node(i);
    const double m = (f[i + 1] - f[i]) / dx;
    const double drop = release - f[i];
    total += adaptive_quadrature(
        [&](double t) { return std::sqrt(1.0 + m * m) / std::sqrt(drop - m * t); }, 0.0, dx, 1e-11);
  }
  return total;
}

double newton_integral(const PLFunction& f) {
  const Grid& grid = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double x0 = grid.node(i), x1 = grid.node(i + 1);
    const double m = (f[i + 1] - f[i]) / (x1 - x0);
    total += adaptive_quadrature([&](double x) { return x / (1.0 + m * m); }, x0, x1, 1e-11);
  }
  return total;
}

double flux_integral(const PLFunction& f, const std::function<double(double)>& p) {
  const Grid& grid = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double x0 = grid.node(i), x1 = grid.node(i + 1);
    const double m = (f[i + 1] - f[i]) / (x1 - x0);
    total += adaptive_quadrature([&](double) { return p(m); }, x0, x1, 1e-11);
  }
  return total;
}

PLFunction refine(const PLFunction& f) {
  const Grid& g0 = f.grid();
  std::vector<double> y;
  for (std::size_t i = 0; i < f.size(); ++i) {
    y.push_back(f[i]);
    if (i + 1 < f.size()) y.push_back(0.5 * (f[i] + f[i + 1]));
  }
  return PLFunction(Grid(g0.x_start(), g0.x_end(), 2 * g0.n_points() - 1), y);
}

PLFunction repaired(const ProblemSpec& p, std::mt19937_64& rng, double spread, std::size_t curve = 0) {
  Candidate c = p.chord;
  std::normal_distribution<double> noise(0.0, spread);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (p.mutable_mask[i]) c[i] += noise(rng);
  }
  p.repair(c);
  return p.decode(c).at(curve);
}

}  // namespace

TEST_CASE("segment kinematics") {
  const auto incline = segment_descent_time(0, 10, 10, 0, 0.0, g);
  REQUIRE(incline);
  CHECK(incline->time == doctest::Approx(2.02031).epsilon(1e-5));
  CHECK(incline->time == doctest::Approx(std::sqrt(2 * std::sqrt(200.0) / (g * std::sqrt(0.5)))));
  CHECK(incline->v_out == doctest::Approx(14.0).epsilon(1e-15));

  const auto flat = segment_descent_time(0, 0, 0.42920, 0, std::sqrt(2 * g), g);
  REQUIRE(flat);
  CHECK(flat->time == doctest::Approx(0.09695).epsilon(1e-4));

  CHECK_FALSE(segment_descent_time(0, 0, 1, 1, 1.0, g));
  CHECK(segment_descent_time(0, 0, 1, 1, 10.0, g));
}

TEST_CASE("descent_time") {
  const PLFunction chord(Grid(0, 10, 2), {10, 0});
  CHECK(descent_time(chord, g, 10) == doctest::Approx(2.0203051));
  CHECK(descent_time(PLFunction(Grid(0, 10, 3), {10, 10.5, 0}), g, 10) == kInfeasible);
  CHECK(descent_time(PLFunction(Grid(0, 10, 2), {10.5, 0}), g, 10) == kInfeasible);
}

TEST_CASE("descent_time is infinite exactly when a node rises above release") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> y = uniform_vector(rng, 12, 0.0, 9.9);
    y.front() = 10.0;
    const bool raise = trial % 2 == 0;
    if (raise) y[1 + trial % 10] = 10.0 + 0.01 + 0.5 * (trial % 7);
    const double t = descent_time(PLFunction(Grid(0, 10, 12), y), g, 10.0);
    CHECK((t == kInfeasible) == raise);
  }
}

TEST_CASE("ramm functional closed forms") {
  const double b = 2.0;
  CHECK(ramm_functional(PLFunction(Grid(0, b, 2), {1, 0})) ==
        doctest::Approx(2 * std::sqrt(5.0)).epsilon(1e-14));

  std::vector<double> through_origin(200001, 0.0);
  through_origin.front() = 1.0;
  CHECK(ramm_functional(PLFunction(Grid(0, b, through_origin.size()), through_origin)) ==
        doctest::Approx(2 + b).epsilon(1e-5));

  const double pi = std::numbers::pi;
  const double polygon = ramm_functional(PLFunction(Grid(0, pi / 2, 2), {1, 0})) +
                         ramm_functional(PLFunction(Grid(pi / 2, b, 2), {0, 0}));
  CHECK(polygon == doctest::Approx(std::sqrt(4 + pi * pi) + b - pi / 2).epsilon(1e-14));

  CHECK(ramm_time(PLFunction(Grid(0, b, 2), {1, 0})) == doctest::Approx(1.01015).epsilon(1e-5));
  CHECK(ramm_functional(PLFunction(Grid(0, b, 3), {1, 1.2, 0})) == kInfeasible);
}

TEST_CASE("newton and thermal closed forms") {
  CHECK(newton_resistance(PLFunction(Grid(0, 1, 5), {0, 0, 0, 0, 0})) == doctest::Approx(0.5));
  CHECK(newton_resistance(PLFunction(Grid(0, 1, 2), {0, 2})) == doctest::Approx(0.1));

  const FluxPair flux = FluxPair::two_dimensional();
  const PLFunction front(Grid(0, 1, 5), {0, 0.5, 1, 1.5, 2});
  const PLFunction rear(Grid(0, 1, 4), {0, 0, 0, 0});
  CHECK(thermal_resistance(front, rear, flux) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(thermal_resistance(rear, rear, flux) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(flux.p_plus(0) == 1.5);
  CHECK(flux.p_minus(0) == 0.0);
}

TEST_CASE("adaptive_quadrature") {
  CHECK(adaptive_quadrature([](double x) { return x; }, 0, 1, 1e-10) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(adaptive_quadrature([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-8) - 2) <=
        1e-6);
  const double m = 1.7;
  const double closed = (0.6 * 0.6 - 0.3 * 0.3) / (2 * (1 + m * m));
  CHECK(std::abs(adaptive_quadrature([&](double x) { return x / (1 + m * m); }, 0.3, 0.6, 1e-12) -
                 closed) <= 1e-9);
  CHECK(std::abs(adaptive_quadrature([](double x) { return 1 / std::sqrt(1 + 1e-12 - x); }, 0, 1,
                                     1e-9) -
                 2 * (std::sqrt(1 + 1e-12) - 1e-6)) <= 1e-8);
  CHECK_THROWS_AS(adaptive_quadrature([](double x) { return 1 / x; }, 0, 1, 1e-8),
                  std::runtime_error);
  CHECK_THROWS_AS(adaptive_quadrature([](double x) { return x; }, 1, 1, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("closed forms agree with quadrature on random feasible candidates") {
  std::mt19937_64 rng(1234);
  const ProblemSpec brach = make_brachistochrone(20);
  const ProblemSpec ramm = make_ramm(2.0, 20);
  const ProblemSpec newton = make_newton(1.0, 2.0, 20);
  const ProblemSpec thermal = make_thermal(2.0, 31);
  const FluxPair flux = FluxPair::two_dimensional();
  double worst[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> y = uniform_vector(rng, 21, 0.0, 9.5);
    y.front() = 10.0;
    y.back() = 0.0;
    const PLFunction fb(brach.grids[0], y);
    worst[0] = std::max(worst[0], std::abs(descent_time(fb, g, 10.0) -
                                           descent_integral(fb, 10.0) / std::sqrt(2 * g)));

    const PLFunction fr = repaired(ramm, rng, 0.2);
    worst[1] = std::max(worst[1], std::abs(ramm_functional(fr) - descent_integral(fr, 1.0)));

    const PLFunction fn = repaired(newton, rng, 0.5);
    worst[2] = std::max(worst[2], std::abs(newton_resistance(fn) - newton_integral(fn)));

    const PLFunction front = repaired(thermal, rng, 0.2, 0);
    const PLFunction rear = repaired(thermal, rng, 0.2, 1);
    worst[3] = std::max(worst[3], std::abs(thermal_resistance(front, rear, flux) -
                                           flux_integral(front, flux.p_plus) -
                                           flux_integral(rear, flux.p_minus)));
  }
  for (double w : worst) CHECK(w <= 1e-8);
}

TEST_CASE("subdivision invariance") {
  std::mt19937_64 rng(77);
  const FluxPair flux = FluxPair::two_dimensional();
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> y = uniform_vector(rng, 21, 0.0, 9.5);
    y.front() = 10.0;
    const PLFunction fb(Grid(0, 10, 21), y);
    CHECK(std::abs(descent_time(fb, g, 10) - descent_time(refine(fb), g, 10)) <= 1e-9);

    std::vector<double> yr = uniform_vector(rng, 21, -1.0, 1.0);
    yr.front() = 1.0;
    const PLFunction fr(Grid(0, 2, 21), yr);
    CHECK(std::abs(ramm_functional(fr) - ramm_functional(refine(fr))) <= 1e-9);

    const PLFunction fn(Grid(0, 1, 21), uniform_vector(rng, 21, 0.0, 2.0));
    CHECK(std::abs(newton_resistance(fn) - newton_resistance(refine(fn))) <= 1e-9);

    const PLFunction front(Grid(0, 1, 17), uniform_vector(rng, 17, 0.0, 2.0));
    const PLFunction rear(Grid(0, 1, 16), uniform_vector(rng, 16, 0.0, 2.0));
    CHECK(std::abs(thermal_resistance(front, rear, flux) -
                   thermal_resistance(refine(front), refine(rear), flux)) <= 1e-9);
  }
}

TEST_CASE("ramm time is the scaled functional") {
  std::mt19937_64 rng(8);
  const ProblemSpec ramm = make_ramm(2.0, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const PLFunction f = repaired(ramm, rng, 0.3);
    CHECK(ramm_time(f, g) * std::sqrt(2 * g) ==
          doctest::Approx(ramm_functional(f)).epsilon(1e-9));
  }
}

TEST_CASE("convex ramm candidates lie between the composite optimum and the chord") {
  std::mt19937_64 rng(99);
  const ProblemSpec ramm = make_ramm(2.0, 20);
  const double pi = std::numbers::pi;
  const double t0 = 2 * std::sqrt(5.0);
  // Cycloid to (pi/2, 0) in functional units is pi, then the floor.
  const double composite = pi + 2 - pi / 2;
  for (int trial = 0; trial < 1000; ++trial) {
    const double spread = 0.01 + 0.5 * (trial % 10) / 10.0;
    const PLFunction f = repaired(ramm, rng, spread);
    REQUIRE(has_nondecreasing_slopes(f.y(), 1e-12));
    const double t = ramm_functional(f);
    CHECK(t > composite);
    CHECK(t <= t0 + 1e-12);
  }
}

TEST_CASE("near-optimal ramm candidates undercut the (pi/2, 0) polygon") {
  const double pi = std::numbers::pi;
  const ProblemSpec ramm = make_ramm(2.0, 20);
  const double tpbr = std::sqrt(4 + pi * pi) + 2 - pi / 2;
  const double interp = interpolant_objective(ramm) * std::sqrt(2 * g);
  CHECK(interp < tpbr);
  CHECK(interp == doctest::Approx(0.8108289 * std::sqrt(2 * g)).epsilon(1e-6));
}

TEST_CASE("feasible candidates never beat the continuous optimum") {
  std::mt19937_64 rng(31);
  const ProblemSpec problems[] = {make_brachistochrone(20), make_ramm(2.0, 20),
                                  make_newton(1.0, 2.0, 20), make_thermal(2.0, 31)};
  for (const ProblemSpec& p : problems) {
    for (int trial = 0; trial < 1000; ++trial) {
      Candidate c = p.chord;
      std::normal_distribution<double> noise(0.0, 0.02 + 0.3 * (trial % 5));
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (p.mutable_mask[i]) c[i] += noise(rng);
      }
      p.repair(c);
      CHECK(p.objective(c) >= p.reference_objective);
    }
  }
}
