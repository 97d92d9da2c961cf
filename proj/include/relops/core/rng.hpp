#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace relops {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic generator (xoshiro256**). Hand-rolled so that trajectories
// are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
    has_spare_ = false;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // Exponential with the given mean (inverse CDF).
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

  // Box-Muller with cached spare.
  double normal(double mu = 0.0, double sigma = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mu + sigma * spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mu + sigma * r * std::cos(theta);
  }

  // Gaussian clamped at zero (healthy-metric noise model).
  double normal_nonneg(double mu, double sigma) {
    const double v = normal(mu, sigma);
    return v < 0.0 ? 0.0 : v;
  }

  // Derive an independent child stream from a seed and tags. Streams keyed by
  // (node, purpose) make trajectories independent of iteration order.
  static std::uint64_t derive(std::uint64_t seed, std::string_view tag, std::uint64_t idx = 0) {
    std::uint64_t h = seed ^ 0x6a09e667f3bcc909ULL;
    for (char c : tag) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= idx + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    std::uint64_t sm = h;
    return splitmix64(sm);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace relops
