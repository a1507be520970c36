#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "arts/rng.hpp"

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance_of(const std::vector<double>& xs, double mean) {
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return s / static_cast<double>(xs.size());
}

}  // namespace

TEST_SUITE("rng") {

TEST_CASE("streams are deterministic and index-separated") {
  auto a = arts::rng::Xoshiro256pp::stream(42, 7);
  auto b = arts::rng::Xoshiro256pp::stream(42, 7);
  auto c = arts::rng::Xoshiro256pp::stream(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next();
    all_equal &= va == b.next();
    any_diff |= va != c.next();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform01 stays in [0,1)") {
  auto gen = arts::rng::Xoshiro256pp(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = gen.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  auto gen = arts::rng::Xoshiro256pp(2024);
  const std::size_t n = 1000000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = gen.normal();
  const double m = mean_of(xs);
  const double v = variance_of(xs, m);
  CHECK(std::abs(m) < 0.004);       // 4 sigma of the mean estimator
  CHECK(std::abs(v - 1.0) < 0.01);
}

TEST_CASE("poisson moments across both sampling regimes") {
  // below 10 uses the Knuth product method, above it Hormann's PTRS
  for (double lambda : {0.5, 3.0, 9.5, 10.5, 40.0, 200.0}) {
    auto gen = arts::rng::Xoshiro256pp(static_cast<std::uint64_t>(lambda * 100) + 3);
    const std::size_t n = 200000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = static_cast<double>(gen.poisson(lambda));
    const double m = mean_of(xs);
    const double v = variance_of(xs, m);
    CHECK(std::abs(m - lambda) < 5.0 * std::sqrt(lambda / static_cast<double>(n)));
    CHECK(std::abs(v - lambda) < 0.05 * lambda + 0.05);
  }
}

TEST_CASE("poisson edge cases") {
  auto gen = arts::rng::Xoshiro256pp(9);
  CHECK(gen.poisson(0.0) == 0);
  CHECK(gen.poisson(-1.0) == 0);
}

TEST_CASE("binomial moments and edges") {
  auto gen = arts::rng::Xoshiro256pp(5);
  CHECK(gen.binomial(100, 0.0) == 0);
  CHECK(gen.binomial(100, 1.0) == 100);
  CHECK(gen.binomial(0, 0.3) == 0);

  const std::size_t n = 200000;
  const double p = 0.03;
  const std::uint64_t trials = 50;
  std::vector<double> xs(n);
  for (auto& x : xs) x = static_cast<double>(gen.binomial(trials, p));
  const double expected = static_cast<double>(trials) * p;
  const double sd = std::sqrt(expected * (1.0 - p));
  CHECK(std::abs(mean_of(xs) - expected) < 5.0 * sd / std::sqrt(static_cast<double>(n)));
}

}  // TEST_SUITE
