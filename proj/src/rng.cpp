#include "esvar/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esvar {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

}  // namespace

GaussianSource::GaussianSource(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t GaussianSource::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double GaussianSource::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

double GaussianSource::next_standard_normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * kTwoPow53Inv;
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::vector<double> gaussian_vector(GaussianSource& source, std::size_t n, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_vector: sigma must be non-negative");
  std::vector<double> out(n);
  for (double& v : out) v = sigma * source.next_standard_normal();
  return out;
}

}  // namespace esvar
