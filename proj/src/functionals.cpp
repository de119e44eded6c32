#include "esvar/functionals.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace esvar {

FluxPair FluxPair::two_dimensional() {
  return {
      [](double u) { return 1.0 / (1.0 + u * u) + 0.5; },
      [](double u) { return 0.5 / (1.0 + u * u) - 0.5; },
  };
}

std::optional<SegmentTransit> segment_descent_time(double x1, double y1, double x2, double y2,
                                                   double v_in, double g) {
  const double length = std::hypot(x2 - x1, y2 - y1);
  const double v_out_sq = v_in * v_in + 2.0 * g * (y1 - y2);
  if (v_out_sq < 0.0) return std::nullopt;
  const double v_out = std::sqrt(v_out_sq);
  const double speed_sum = v_in + v_out;
  if (!(speed_sum > 0.0)) return std::nullopt;
  // Equals (v_out - v_in) / a_t without the cancellation at small a_t.
  return SegmentTransit{2.0 * length / speed_sum, v_out};
}

double descent_time(const PLFunction& f, double g, double release_height) {
  const double head = release_height - f[0];
  if (head < 0.0) return kInfeasible;
  const Grid& grid = f.grid();
  double v = std::sqrt(2.0 * g * head);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.n_segments(); ++i) {
    const auto transit = segment_descent_time(grid.node(i), f[i], grid.node(i + 1), f[i + 1], v, g);
    if (!transit) return kInfeasible;
    total += transit->time;
    v = transit->v_out;
  }
  return total;
}

double ramm_functional(const PLFunction& f) {
  const Grid& grid = f.grid();
  for (double y : f.y()) {
    if (y > 1.0) return kInfeasible;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < grid.n_segments(); ++i) {
    const double dx = grid.node(i + 1) - grid.node(i);
    const double m = (f[i + 1] - f[i]) / dx;
    // (2 sqrt(1+m^2) / m)(sqrt(1-y1) - sqrt(1-y2)), rationalised so m = 0 needs no branch.
    const double root_sum = std::sqrt(1.0 - f[i]) + std::sqrt(1.0 - f[i + 1]);
    if (!(root_sum > 0.0)) return kInfeasible;
    total += 2.0 * std::sqrt(1.0 + m * m) * dx / root_sum;
  }
  return total;
}

double ramm_time(const PLFunction& f, double g) { return descent_time(f, g, 1.0); }

double newton_resistance(const PLFunction& f) {
  const Grid& grid = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.n_segments(); ++i) {
    const double x1 = grid.node(i);
    const double x2 = grid.node(i + 1);
    const double m = (f[i + 1] - f[i]) / (x2 - x1);
    total += (x2 * x2 - x1 * x1) / (2.0 * (1.0 + m * m));
  }
  return total;
}

double thermal_resistance(const PLFunction& front, const PLFunction& rear, const FluxPair& flux) {
  auto integrate = [](const PLFunction& f, const std::function<double(double)>& p) {
    const Grid& grid = f.grid();
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_segments(); ++i) {
      const double dt = grid.node(i + 1) - grid.node(i);
      total += p((f[i + 1] - f[i]) / dt) * dt;
    }
    return total;
  };
  return integrate(front, flux.p_plus) + integrate(rear, flux.p_minus);
}

namespace {

// Double-exponential rule: abscissas cluster at the endpoints without
// touching them, which absorbs algebraic endpoint singularities. Panels that
// miss their share of the tolerance are halved, so a singularity sitting just
// outside the interval ends up in a short panel of its own.
double quadrature_panel(const std::function<double(double)>& integrand, double a, double b,
                        double tol, int depth, int& budget) {
  // integrate() is not const-qualified in this Boost release; the abscissa
  // cache behind it is guarded by its own mutex.
  static boost::math::quadrature::tanh_sinh<double> rule(15);
  double error = 0.0;
  double l1 = 0.0;
  auto f = [&](double x) { return integrand(x); };
  const double relative = std::max(tol / std::max(b - a, 1.0), 1e-15);
  const double value = rule.integrate(f, a, b, relative, &error, &l1);
  const double achieved = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * l1);
  if (std::isfinite(value) && error <= achieved) return value;
  if (depth == 0 || --budget < 0) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "adaptive_quadrature: no convergence (error estimate %.3g)",
                  error);
    throw std::runtime_error(msg);
  }
  const double mid = a + 0.5 * (b - a);
  return quadrature_panel(integrand, a, mid, 0.5 * tol, depth - 1, budget) +
         quadrature_panel(integrand, mid, b, 0.5 * tol, depth - 1, budget);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& integrand, double a, double b,
                           double tol) {
  if (!(a < b)) throw std::invalid_argument("adaptive_quadrature: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");
  int budget = 512;  // panel splits
  return quadrature_panel(integrand, a, b, tol, 24, budget);
}

}  // namespace esvar
