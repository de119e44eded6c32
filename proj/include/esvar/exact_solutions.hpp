#pragma once

#include "esvar/functionals.hpp"
#include "esvar/plfunc.hpp"

namespace esvar {

struct Point {
  double x;
  double y;
};

/// Brachistochrone through two points, as a cycloid rolled by a circle of
/// `radius`:  x = x0 + R (theta - sin theta),  y = y0 - R (1 - cos theta),
/// theta in [0, theta_end]. Descent time is sqrt(R / g) * theta_end.
struct CycloidSolution {
  double radius;
  double theta_end;
  Point origin;
  double time;
  double g;
};

/// Throws std::domain_error("no cycloid arc") unless `b` is strictly below and
/// to the right of `a`.
CycloidSolution solve_cycloid(Point a, Point b, double g = kStandardGravity);
Point cycloid_point(const CycloidSolution& sol, double theta);
CurveSampler cycloid_sampler(const CycloidSolution& sol);

/// Closed-form values of the restricted functional at b for the chord, the
/// path through the origin and the polygon through (pi/2, 0). `case_id`
/// follows the thresholds b < 4/3, 4/3 <= b <= pi/2, b > pi/2.
struct RammReference {
  double t0;
  double tp;
  double tpbr;
  int case_id;
};

RammReference ramm_reference(double b);

/// Cycloid from (0,1) to (pi/2,0) followed by the floor up to (b,0).
struct RammConjecture {
  CurveSampler curve;
  double time;
};

/// Physical time, g in length/time^2. Requires b > pi/2.
RammConjecture ramm_conjectured_curve(double b, double g = kStandardGravity);

/// Optimal Newton profile of radius r and height H. For u in [1, u_max]
///   x(u) = (lambda/2)(1/u + 2u + u^3)
///   y(u) = (lambda/2)(-log u + u^2 + 3u^4/4) - 7 lambda / 8
/// and the nose x in [0, 2 lambda] is flat.
struct NewtonProfile {
  double lambda_n;
  double u_max;
  double r;
  double height;

  double x_at(double u) const;
  double y_at(double u) const;
};

NewtonProfile solve_newton_profile(double r, double height);
double newton_exact_resistance(const NewtonProfile& p);
CurveSampler newton_sampler(const NewtonProfile& p);

struct ThermalReference {
  double h;
  double u_star;
  double u_minus0;
  int case_id;
  double resistance;
};

/// Tabulated optimum for the two-dimensional thermal problem. Only h = 2 is
/// available; any other height throws std::domain_error("unsupported instance").
ThermalReference thermal_reference(double h);

/// Optimal body for a case-3 reference: a front triangle of height u_star and
/// a rear trapezium whose sides have slope u_minus0, both over t in [0, 1].
struct ThermalShape {
  CurveSampler front;
  CurveSampler rear;
  double h_plus;
};

ThermalShape thermal_reference_shape(const ThermalReference& ref);

}  // namespace esvar
