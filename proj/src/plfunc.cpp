#include "esvar/plfunc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace esvar {

Grid::Grid(double x_start, double x_end, std::size_t n_points)
    : x_start_(x_start), x_end_(x_end), n_points_(n_points) {
  if (!(x_end > x_start) || !std::isfinite(x_start) || !std::isfinite(x_end)) {
    throw std::invalid_argument("grid: x_end must exceed x_start");
  }
  if (n_points < 2) throw std::invalid_argument("grid: need at least 2 nodes");
  spacing_ = (x_end - x_start) / static_cast<double>(n_points - 1);
}

double Grid::node(std::size_t i) const {
  if (i + 1 == n_points_) return x_end_;
  return x_start_ + static_cast<double>(i) * spacing_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = node(i);
  return xs;
}

PLFunction::PLFunction(Grid grid, std::vector<double> y) : grid_(grid), y_(std::move(y)) {
  if (y_.size() != grid_.n_points()) {
    throw std::invalid_argument("plfunction: " + std::to_string(y_.size()) +
                                " ordinates for " + std::to_string(grid_.n_points()) + " nodes");
  }
  for (double v : y_) {
    if (!std::isfinite(v)) throw std::invalid_argument("plfunction: non-finite ordinate");
  }
}

PLFunction sample_onto_grid(const CurveSampler& curve, const Grid& grid) {
  std::vector<double> y(grid.n_points());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = curve(grid.node(i));
    if (!std::isfinite(v)) throw std::domain_error("sampler domain");
    y[i] = v;
  }
  return {grid, std::move(y)};
}

double eval_at(const PLFunction& f, double x) {
  const Grid& g = f.grid();
  if (!(x >= g.x_start() && x <= g.x_end())) {
    throw std::domain_error("eval_at: x outside [x_start, x_end]");
  }
  const double s = (x - g.x_start()) / g.spacing();
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= g.n_segments()) i = g.n_segments() - 1;
  const double x0 = g.node(i);
  const double x1 = g.node(i + 1);
  if (x == x0) return f[i];
  if (x == x1) return f[i + 1];
  const double t = (x - x0) / (x1 - x0);
  return f[i] + t * (f[i + 1] - f[i]);
}

std::vector<double> slopes(const PLFunction& f) {
  const Grid& g = f.grid();
  std::vector<double> m(g.n_segments());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = (f[i + 1] - f[i]) / (g.node(i + 1) - g.node(i));
  }
  return m;
}

namespace repair {

void pin_endpoints(std::span<double> y, double y_start, double y_end) {
  if (y.empty()) return;
  y.front() = y_start;
  y.back() = y_end;
}

void clamp_box(std::span<double> y, std::span<const double> lower, std::span<const double> upper) {
  if (lower.size() != y.size() || upper.size() != y.size()) {
    throw std::invalid_argument("clamp_box: bound length mismatch");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("clamp_box: inverted bounds");
    y[i] = std::min(upper[i], std::max(lower[i], y[i]));
  }
}

void clamp_box(std::span<double> y, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("clamp_box: inverted bounds");
  for (double& v : y) v = std::min(upper, std::max(lower, v));
}

void monotone(std::span<double> y) {
  for (std::size_t i = 1; i < y.size(); ++i) y[i] = std::max(y[i], y[i - 1]);
}

namespace {

// One pass of Andrew's monotone chain, lower half only. Collinear points stay
// on the hull so that convex input is returned bit-for-bit. Returns whether
// any node changed.
bool lower_hull_pass(std::span<double> y, std::vector<std::size_t>& hull) {
  const std::size_t n = y.size();
  hull.clear();
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t k = hull[hull.size() - 1];
      const std::size_t j = hull[hull.size() - 2];
      const double lhs = (y[k] - y[j]) * static_cast<double>(i - j);
      const double rhs = (y[i] - y[j]) * static_cast<double>(k - j);
      if (lhs > rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  bool changed = false;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h];
    const std::size_t b = hull[h + 1];
    const double step = (y[b] - y[a]) / static_cast<double>(b - a);
    for (std::size_t i = a + 1; i < b; ++i) {
      const double v = y[a] + step * static_cast<double>(i - a);
      changed = changed || v != y[i];
      y[i] = v;
    }
  }
  return changed;
}

}  // namespace

void convex_minorant(std::span<double> y) {
  if (y.size() < 3) return;
  std::vector<std::size_t> hull;
  hull.reserve(y.size());
  // Interpolated nodes can land an ulp off their hull edge, so a second pass
  // may still move them. Passes repeat until the output is a fixed point.
  for (int pass = 0; pass < 16 && lower_hull_pass(y, hull); ++pass) {
  }
}

}  // namespace repair

PLFunction pin_endpoints(const PLFunction& f, double y_start, double y_end) {
  std::vector<double> y = f.y();
  repair::pin_endpoints(y, y_start, y_end);
  return {f.grid(), std::move(y)};
}

PLFunction clamp_box(const PLFunction& f, std::span<const double> lower,
                     std::span<const double> upper) {
  std::vector<double> y = f.y();
  repair::clamp_box(y, lower, upper);
  return {f.grid(), std::move(y)};
}

PLFunction monotone_repair(const PLFunction& f) {
  std::vector<double> y = f.y();
  repair::monotone(y);
  return {f.grid(), std::move(y)};
}

PLFunction convex_repair(const PLFunction& f) {
  std::vector<double> y = f.y();
  repair::convex_minorant(y);
  return {f.grid(), std::move(y)};
}

double max_abs_deviation(const PLFunction& f, const CurveSampler& reference) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(f[i] - reference(f.grid().node(i))));
  }
  return worst;
}

bool is_nondecreasing(std::span<const double> y, double tol) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] < y[i - 1] - tol) return false;
  }
  return true;
}

bool has_nondecreasing_slopes(std::span<const double> y, double tol) {
  for (std::size_t i = 2; i < y.size(); ++i) {
    if ((y[i] - y[i - 1]) < (y[i - 1] - y[i - 2]) - tol) return false;
  }
  return true;
}

}  // namespace esvar
