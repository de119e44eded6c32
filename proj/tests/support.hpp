#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "esvar/plfunc.hpp"

namespace esvar::testing {

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                          double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Piecewise-linear interpolation through the nodes in `keep`; used as an
// independent lower-hull oracle.
inline std::vector<double> interpolate_subset(const std::vector<double>& y,
                                              const std::vector<std::size_t>& keep) {
  std::vector<double> out(y.size());
  for (std::size_t s = 0; s + 1 < keep.size(); ++s) {
    const std::size_t a = keep[s], b = keep[s + 1];
    for (std::size_t i = a; i <= b; ++i) {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      out[i] = y[a] + t * (y[b] - y[a]);
    }
  }
  return out;
}

// Greatest convex minorant by exhaustion: the pointwise maximum of every
// convex polyline through a subset of the nodes that stays below all nodes.
inline std::vector<double> brute_force_minorant(const std::vector<double>& y) {
  const std::size_t n = y.size();
  const std::size_t inner = n - 2;
  std::vector<double> best(n, -1e300);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inner); ++bits) {
    std::vector<std::size_t> keep{0};
    for (std::size_t k = 0; k < inner; ++k) {
      if (bits >> k & 1) keep.push_back(k + 1);
    }
    keep.push_back(n - 1);
    const std::vector<double> line = interpolate_subset(y, keep);
    bool below = true;
    for (std::size_t i = 0; i < n; ++i) below = below && line[i] <= y[i] + 1e-12;
    bool convex = true;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      convex = convex && (line[i + 1] - line[i]) >= (line[i] - line[i - 1]) - 1e-12;
    }
    if (!below || !convex) continue;
    for (std::size_t i = 0; i < n; ++i) best[i] = std::max(best[i], line[i]);
  }
  return best;
}

}  // namespace esvar::testing
