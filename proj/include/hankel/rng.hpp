#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hankel {

// Splittable counter-based random stream (xoshiro256++ state derived from the
// seed through SplitMix64).  A child stream is a pure function of the parent
// seed and an index, so replications can be distributed over any number of
// workers without changing the draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) word = splitmix64(z);
  }

  static RandomStream child(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed;
    std::uint64_t mixed = splitmix64(z);
    z = mixed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return RandomStream(splitmix64(z));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the spare deviate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze/accept; valid for every
  // positive shape (shapes below one are boosted through G(a+1) * U^{1/a}).
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
    if (shape < 1.0) {
      const double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Beta(a, b) as a ratio of gamma draws.  Draws that collapse to exactly 0
  // or 1 in floating point are redrawn and counted.
  double beta(double a, double b, std::uint64_t* redraws = nullptr) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::domain_error("beta: shapes must be positive");
    for (;;) {
      const double x = gamma(a);
      const double y = gamma(b);
      const double s = x + y;
      if (s > 0.0) {
        const double r = x / s;
        if (r > 0.0 && r < 1.0) return r;
      }
      if (redraws) ++(*redraws);
    }
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hankel
