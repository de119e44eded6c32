#include "esvar/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esvar {
namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kPi = std::numbers::pi;

// Root of an increasing or decreasing function on [lo, hi]; the caller
// guarantees a sign change.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol = kRootTolerance) {
  const bool increasing = f(lo) < 0.0;
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool below = f(mid) < 0.0;
    if (below == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// theta - sin(theta) loses every significant digit for small theta.
double theta_minus_sin(double t) {
  if (t < 0.1) {
    const double t2 = t * t;
    return t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
  }
  return t - std::sin(t);
}

double one_minus_cos(double t) {
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s;
}

// Tolerance for sampler domains; grids computed as x0 + i*h may overshoot by ulps.
double domain_slack(double lo, double hi) { return 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)}); }

double newton_x_unit(double u) { return 0.5 * (1.0 / u + 2.0 * u + u * u * u); }
double newton_y_unit(double u) {
  return 0.5 * (-std::log(u) + u * u + 0.75 * u * u * u * u) - 0.875;
}
double newton_dx_unit(double u) { return 0.5 * (-1.0 / (u * u) + 2.0 + 3.0 * u * u); }

}  // namespace

CycloidSolution solve_cycloid(Point a, Point b, double g) {
  const double drop = a.y - b.y;
  const double width = b.x - a.x;
  const double ratio = drop / width;
  auto residual = [ratio](double t) { return one_minus_cos(t) / theta_minus_sin(t) - ratio; };
  constexpr double lo = 1e-6;
  constexpr double hi = 2.0 * kPi;
  if (!(drop > 0.0) || !(width > 0.0) || !std::isfinite(ratio) || !(residual(lo) > 0.0) ||
      !(residual(hi) < 0.0)) {
    throw std::domain_error("no cycloid arc");
  }
  const double theta = bisect(residual, lo, hi);
  const double radius = drop / one_minus_cos(theta);
  return {radius, theta, a, std::sqrt(radius / g) * theta, g};
}

Point cycloid_point(const CycloidSolution& sol, double theta) {
  return {sol.origin.x + sol.radius * theta_minus_sin(theta),
          sol.origin.y - sol.radius * one_minus_cos(theta)};
}

CurveSampler cycloid_sampler(const CycloidSolution& sol) {
  const double x_lo = sol.origin.x;
  const double x_hi = cycloid_point(sol, sol.theta_end).x;
  return [sol, x_lo, x_hi](double x) {
    const double slack = domain_slack(x_lo, x_hi);
    if (!(x >= x_lo - slack && x <= x_hi + slack)) throw std::domain_error("sampler domain");
    if (x <= x_lo) return sol.origin.y;
    if (x >= x_hi) return cycloid_point(sol, sol.theta_end).y;
    const double theta =
        bisect([&](double t) { return cycloid_point(sol, t).x - x; }, 0.0, sol.theta_end);
    return cycloid_point(sol, theta).y;
  };
}

RammReference ramm_reference(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("ramm_reference: b must be positive");
  RammReference ref{};
  ref.t0 = 2.0 * std::sqrt(1.0 + b * b);
  ref.tp = 2.0 + b;
  ref.tpbr = std::sqrt(4.0 + kPi * kPi) + b - kPi / 2.0;
  if (b < 4.0 / 3.0) {
    ref.case_id = 1;
  } else if (b <= kPi / 2.0) {
    ref.case_id = 2;
  } else {
    ref.case_id = 3;
  }
  return ref;
}

RammConjecture ramm_conjectured_curve(double b, double g) {
  if (!(b > kPi / 2.0)) {
    throw std::invalid_argument("ramm_conjectured_curve: requires b > pi/2");
  }
  const CycloidSolution arc = solve_cycloid({0.0, 1.0}, {kPi / 2.0, 0.0}, g);
  CurveSampler on_arc = cycloid_sampler(arc);
  CurveSampler curve = [on_arc, b](double x) {
    if (!(x >= -domain_slack(0.0, b) && x <= b + domain_slack(0.0, b))) {
      throw std::domain_error("sampler domain");
    }
    return x < kPi / 2.0 ? on_arc(x) : 0.0;
  };
  return {std::move(curve), arc.time + (b - kPi / 2.0) / std::sqrt(2.0 * g)};
}

double NewtonProfile::x_at(double u) const {
  return u <= 1.0 ? 2.0 * lambda_n * u : lambda_n * newton_x_unit(u);
}

double NewtonProfile::y_at(double u) const { return u <= 1.0 ? 0.0 : lambda_n * newton_y_unit(u); }

NewtonProfile solve_newton_profile(double r, double height) {
  if (!(r > 0.0) || !(height > 0.0)) {
    throw std::domain_error("solve_newton_profile: r and H must be positive");
  }
  const double target = height / r;
  // y/x is free of lambda and increases from 0 at u = 1.
  auto residual = [target](double u) { return newton_y_unit(u) / newton_x_unit(u) - target; };
  double hi = 2.0;
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw std::domain_error("solve_newton_profile: H/r out of range");
  }
  const double u_max = bisect(residual, 1.0, hi);
  return {r / newton_x_unit(u_max), u_max, r, height};
}

double newton_exact_resistance(const NewtonProfile& p) {
  const double lam = p.lambda_n;
  double total = 2.0 * lam * lam;
  if (p.u_max > 1.0) {
    total += adaptive_quadrature(
        [lam](double u) {
          const double x = lam * newton_x_unit(u);
          return x / (1.0 + u * u) * lam * newton_dx_unit(u);
        },
        1.0, p.u_max, 1e-10);
  }
  return total;
}

CurveSampler newton_sampler(const NewtonProfile& p) {
  return [p](double x) {
    const double slack = domain_slack(0.0, p.r);
    if (!(x >= -slack && x <= p.r + slack)) throw std::domain_error("sampler domain");
    if (x <= 2.0 * p.lambda_n) return 0.0;
    if (x >= p.r) return p.y_at(p.u_max);
    const double u = bisect([&](double s) { return p.x_at(s) - x; }, 1.0, p.u_max);
    return p.y_at(u);
  };
}

ThermalReference thermal_reference(double h) {
  if (h != 2.0) throw std::domain_error("unsupported instance");
  ThermalReference ref{h, 1.60847, 1.0, 0, 0.681};
  ref.case_id = (ref.u_star < h && h < ref.u_star + ref.u_minus0) ? 3 : 0;
  return ref;
}

ThermalShape thermal_reference_shape(const ThermalReference& ref) {
  if (ref.case_id != 3) throw std::domain_error("unsupported instance");
  const double h_plus = ref.u_star;
  const double h_minus = ref.h - h_plus;
  auto check = [](double t) {
    if (!(t >= -1e-9 && t <= 1.0 + 1e-9)) throw std::domain_error("sampler domain");
  };
  CurveSampler front = [check, h_plus](double t) {
    check(t);
    return h_plus * std::clamp(t, 0.0, 1.0);
  };
  CurveSampler rear = [check, slope = ref.u_minus0, h_minus](double t) {
    check(t);
    return std::min(slope * std::clamp(t, 0.0, 1.0), h_minus);
  };
  return {std::move(front), std::move(rear), h_plus};
}

}  // namespace esvar
