#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace arts::rng {

// splitmix64 step (Sebastiano Vigna, public domain). Advances `state` and
// returns the next output; also used as a mixing function for stream
// derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256++ with all sampling done from explicitly derived sub-streams:
// `stream(seed, i)` yields an independent generator per index, so packet i of
// a simulated trace does not depend on how packets are scheduled across
// threads.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static Xoshiro256pp stream(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256pp(seed + 0x9E3779B97F4A7C15ull * (index + 1));
  }

  std::uint64_t next() {
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

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (one value per call; each consumer owns
  // its stream so the discarded second value costs nothing but time).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double two_pi = 6.2831853071795864769;
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(two_pi * u2);
  }

  // Poisson draw: Knuth's product method for small means, Hormann's PTRS
  // transformed rejection for lambda >= 10.
  std::uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 10.0) return poisson_knuth(lambda);
    return poisson_ptrs(lambda);
  }

  std::uint64_t binomial(std::uint64_t n, double p) {
    if (p <= 0.0 || n == 0) return 0;
    if (p >= 1.0) return n;
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i) k += uniform01() < p;
    return k;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t poisson_knuth(double lambda) {
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double prod = uniform01();
    while (prod > limit) {
      ++k;
      prod *= uniform01();
    }
    return k;
  }

  std::uint64_t poisson_ptrs(double lambda) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform01() - 0.5;
      const double v = uniform01();
      const double us = 0.5 - std::abs(u);
      const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
          k * loglam - lambda - std::lgamma(k + 1.0))
        return static_cast<std::uint64_t>(k);
    }
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace arts::rng
