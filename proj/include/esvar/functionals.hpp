#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "esvar/plfunc.hpp"

namespace esvar {

inline constexpr double kStandardGravity = 9.8;
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

struct PhysicalConstants {
  double g = kStandardGravity;
};

/// Front/rear pressure laws of a body in a rarefied medium, as functions of the
/// profile slope u.
struct FluxPair {
  std::function<double(double)> p_plus;
  std::function<double(double)> p_minus;

  /// p+(u) = 1/(1+u^2) + 1/2, p-(u) = (1/2)/(1+u^2) - 1/2.
  static FluxPair two_dimensional();
};

struct SegmentTransit {
  double time;
  double v_out;
};

/// Frictionless slide along one straight segment under gravity, entering at
/// speed v_in. The tangential acceleration is constant, so
/// v_out^2 = v_in^2 + 2 g (y1 - y2) and time = 2 L / (v_in + v_out).
/// Returns nullopt if the particle stops before reaching (x2, y2).
std::optional<SegmentTransit> segment_descent_time(double x1, double y1, double x2, double y2,
                                                   double v_in, double g);

/// Descent time along the polyline for a particle released at rest at height
/// `release_height`. Returns kInfeasible if the particle stalls anywhere.
double descent_time(const PLFunction& f, double g, double release_height);

/// Dimensionless restricted-brachistochrone functional
///   int sqrt(1 + y'^2) / sqrt(1 - y) dx
/// evaluated in closed form per segment. Returns kInfeasible if any node lies
/// above y = 1.
double ramm_functional(const PLFunction& f);

/// Physical descent time for the restricted problem (release at y = 1).
/// Satisfies ramm_time(f, g) * sqrt(2 g) == ramm_functional(f).
double ramm_time(const PLFunction& f, double g = kStandardGravity);

/// Newton's aerodynamic resistance  int_0^r x / (1 + y'^2) dx.
double newton_resistance(const PLFunction& f);

/// Front plus rear resistance  int p+(front') dt + int p-(rear') dt.
double thermal_resistance(const PLFunction& front, const PLFunction& rear, const FluxPair& flux);

/// Integral of `integrand` over [a, b] to absolute tolerance `tol`. The
/// integrand is never evaluated at the endpoints, so integrable endpoint
/// singularities are allowed. Panels that miss their tolerance are halved.
/// Throws std::runtime_error when the error estimate stays above `tol`.
double adaptive_quadrature(const std::function<double(double)>& integrand, double a, double b,
                           double tol);

}  // namespace esvar
