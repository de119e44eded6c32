#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace esvar {

/// Continuous curve y(x). Samplers throw std::domain_error outside their range.
using CurveSampler = std::function<double(double)>;

/// Uniform abscissa grid. Node abscissas are fixed for the lifetime of a run.
class Grid {
 public:
  Grid(double x_start, double x_end, std::size_t n_points);

  double x_start() const { return x_start_; }
  double x_end() const { return x_end_; }
  std::size_t n_points() const { return n_points_; }
  std::size_t n_segments() const { return n_points_ - 1; }
  double spacing() const { return spacing_; }

  // The last node is exactly x_end.
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;

 private:
  double x_start_;
  double x_end_;
  std::size_t n_points_;
  double spacing_;
};

/// Piecewise-linear function given by its ordinates on a Grid.
class PLFunction {
 public:
  PLFunction(Grid grid, std::vector<double> y);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& y() const { return y_; }
  std::size_t size() const { return y_.size(); }
  double operator[](std::size_t i) const { return y_[i]; }

  bool operator==(const PLFunction&) const = default;

 private:
  Grid grid_;
  std::vector<double> y_;
};

PLFunction sample_onto_grid(const CurveSampler& curve, const Grid& grid);

/// Linear interpolation; exact at nodes. Throws std::domain_error outside the grid.
double eval_at(const PLFunction& f, double x);

std::vector<double> slopes(const PLFunction& f);

PLFunction pin_endpoints(const PLFunction& f, double y_start, double y_end);

/// Elementwise clamp. Throws std::invalid_argument if lower_i > upper_i anywhere.
PLFunction clamp_box(const PLFunction& f, std::span<const double> lower,
                     std::span<const double> upper);

/// Running maximum: the smallest nondecreasing sequence dominating f.
PLFunction monotone_repair(const PLFunction& f);

/// Greatest convex minorant of the node set (lower convex hull).
PLFunction convex_repair(const PLFunction& f);

double max_abs_deviation(const PLFunction& f, const CurveSampler& reference);

// In-place kernels behind the value API. The ES inner loop calls these
// directly to avoid reallocating candidates.
namespace repair {

void pin_endpoints(std::span<double> y, double y_start, double y_end);
void clamp_box(std::span<double> y, std::span<const double> lower, std::span<const double> upper);
void clamp_box(std::span<double> y, double lower, double upper);
void monotone(std::span<double> y);
// Uniform spacing makes the hull independent of the grid length scale.
void convex_minorant(std::span<double> y);

}  // namespace repair

// Feasibility predicates shared by the problem definitions. `tol` absorbs
// rounding left by the hull interpolation.
bool is_nondecreasing(std::span<const double> y, double tol = 0.0);
bool has_nondecreasing_slopes(std::span<const double> y, double tol = 1e-12);

}  // namespace esvar
