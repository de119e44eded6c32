#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace esvar {

/// Seeded normal deviates.
///
/// The uniform stream is xoshiro256** (Blackman & Vigna) whose 256-bit state
/// is filled by four successive splitmix64 outputs of the seed. Normals come
/// from the Box-Muller transform in pairs: with 53-bit uniforms
///   u1 = ((x1 >> 11) + 1) * 2^-53  in (0, 1],   u2 = (x2 >> 11) * 2^-53,
/// the pair is sqrt(-2 ln u1) * (cos(2 pi u2), sin(2 pi u2)); the cosine
/// branch is returned first and the sine branch is held for the next call.
/// Only integer arithmetic and IEEE libm calls are involved, so a seed gives
/// the same stream on every conforming platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_uniform();  // [0, 1)
  double next_standard_normal();

  bool operator==(const GaussianSource&) const = default;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_;
};

/// n independent N(0, sigma^2) draws, in stream order.
std::vector<double> gaussian_vector(GaussianSource& source, std::size_t n, double sigma);

}  // namespace esvar
