#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arts/channel_sim.hpp"
#include "arts/fading_model.hpp"
#include "arts/selection.hpp"

using arts::ChannelSpec;
using arts::LognormalFade;

namespace {

ChannelSpec reference_spec() {
  ChannelSpec spec;
  spec.mean_signal_per_packet = 10.0;
  spec.background_per_packet = 2.0;
  spec.intrinsic_qber = 0.03;
  spec.fade = LognormalFade(1.0, 1.0);
  return spec;
}

}  // namespace

TEST_SUITE("channel_sim") {

TEST_CASE("spec validation") {
  ChannelSpec spec = reference_spec();
  CHECK_NOTHROW(spec.validate());
  spec.mean_signal_per_packet = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
  spec = reference_spec();
  spec.intrinsic_qber = 0.51;
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
  spec = reference_spec();
  spec.fade = LognormalFade(2.0, 1.0);  // not normalized
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
}

TEST_CASE("background_from_snr") {
  CHECK(arts::background_from_snr(10.0, 6.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(arts::background_from_snr(3.0, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(arts::background_from_snr(10.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(arts::background_from_snr(10.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(arts::background_from_snr(0.0, 5.0), std::domain_error);
}

TEST_CASE("noiseless channel produces no errors") {
  ChannelSpec spec = reference_spec();
  spec.background_per_packet = 0.0;
  spec.intrinsic_qber = 0.0;
  const auto trace = arts::generate(spec, 20000, 5);
  CHECK(trace.total_errors() == 0);
  CHECK(trace.total_sifted() > 0);
}

TEST_CASE("constant channel recovers the Poisson mean") {
  ChannelSpec spec = reference_spec();
  spec.background_per_packet = 0.0;
  spec.fade = LognormalFade(1.0, 0.0);
  const std::size_t n = 100000;
  const auto trace = arts::generate(spec, n, 11);
  const double mean =
      static_cast<double>(trace.total_sifted()) / static_cast<double>(n);
  CHECK(std::abs(mean - 10.0) <= 3.0 * std::sqrt(10.0 / static_cast<double>(n)));
  for (const auto& p : trace.packets) CHECK(p.probe_voltage == 1.0);
}

TEST_CASE("mean counts match mu + N_b within 3 standard errors") {
  const ChannelSpec spec = reference_spec();
  const std::size_t n = 100000;
  const auto trace = arts::generate(spec, n, 17);
  double sum = 0.0;
  for (const auto& p : trace.packets) sum += static_cast<double>(p.sifted_count);
  const double mean = sum / static_cast<double>(n);
  // Var(S) = (mu + N_b) + mu^2 (e^{sigma^2} - 1) for the lognormal mixture
  const double var = 12.0 + 100.0 * (std::exp(1.0) - 1.0);
  CHECK(std::abs(mean - 12.0) <= 3.0 * std::sqrt(var / static_cast<double>(n)));
}

TEST_CASE("full-trace QBER matches the background mixture") {
  const ChannelSpec spec = reference_spec();
  const auto trace = arts::generate(spec, 1000000, 23);
  const double qber = static_cast<double>(trace.total_errors()) /
                      static_cast<double>(trace.total_sifted());
  // <Q>(1 - N_b/s) + (1/2) N_b/s at s = mu + N_b = 12
  CHECK(std::abs(qber - 0.10833333333333333) <= 0.002);
}

TEST_CASE("probe fit recovers the fade parameter within 2%") {
  const ChannelSpec spec = reference_spec();
  const auto trace = arts::generate(spec, 100000, 29);
  std::vector<double> probes;
  probes.reserve(trace.packets.size());
  for (const auto& p : trace.packets) probes.push_back(p.probe_voltage);
  const auto fit = arts::fit_mle(probes);
  CHECK(fit.sigma_sq() == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fit.mean_intensity() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("QBER decreases with probe quartile") {
  const ChannelSpec spec = reference_spec();
  const auto trace = arts::generate(spec, 100000, 31);
  const double q1 = spec.fade.quantile(0.25);
  const double q2 = spec.fade.quantile(0.50);
  const double q3 = spec.fade.quantile(0.75);
  double errors[4] = {0, 0, 0, 0}, sifted[4] = {0, 0, 0, 0};
  for (const auto& p : trace.packets) {
    const int bucket = p.probe_voltage <= q1   ? 0
                       : p.probe_voltage <= q2 ? 1
                       : p.probe_voltage <= q3 ? 2
                                               : 3;
    errors[bucket] += static_cast<double>(p.error_count);
    sifted[bucket] += static_cast<double>(p.sifted_count);
  }
  double prev = 1.0;
  for (int b = 0; b < 4; ++b) {
    REQUIRE(sifted[b] > 0);
    const double q = errors[b] / sifted[b];
    CHECK(q < prev);
    prev = q;
  }
}

TEST_CASE("empirical packet survival matches the fade model within 1%") {
  const ChannelSpec spec = reference_spec();
  const std::size_t n = 100000;
  const auto trace = arts::generate(spec, n, 37);
  for (int i = 1; i <= 20; ++i) {
    const double t = spec.fade.quantile(0.045 * static_cast<double>(i));
    std::size_t above = 0;
    for (const auto& p : trace.packets) above += p.probe_voltage > t;
    const double empirical = static_cast<double>(above) / static_cast<double>(n);
    CHECK(std::abs(empirical - spec.fade.survival_fraction(t)) <= 0.01);
  }
}

TEST_CASE("parallel generation is bit-identical to the serial reference") {
  const ChannelSpec spec = reference_spec();
  const auto par = arts::generate(spec, 50000, 41);
  const auto ser = arts::generate_serial(spec, 50000, 41);
  REQUIRE(par.packets.size() == ser.packets.size());
  for (std::size_t i = 0; i < par.packets.size(); ++i) {
    CHECK(par.packets[i].index == ser.packets[i].index);
    CHECK(par.packets[i].probe_voltage == ser.packets[i].probe_voltage);
    CHECK(par.packets[i].sifted_count == ser.packets[i].sifted_count);
    CHECK(par.packets[i].error_count == ser.packets[i].error_count);
  }
}

TEST_CASE("generation is deterministic per seed and every record is valid") {
  const ChannelSpec spec = reference_spec();
  const auto a = arts::generate(spec, 10000, 43);
  const auto b = arts::generate(spec, 10000, 43);
  const auto c = arts::generate(spec, 10000, 44);
  REQUIRE(a.packets.size() == b.packets.size());
  bool equal = true, differs = false;
  for (std::size_t i = 0; i < a.packets.size(); ++i) {
    equal &= a.packets[i].probe_voltage == b.packets[i].probe_voltage &&
             a.packets[i].sifted_count == b.packets[i].sifted_count &&
             a.packets[i].error_count == b.packets[i].error_count;
    differs |= a.packets[i].sifted_count != c.packets[i].sifted_count;
  }
  CHECK(equal);
  CHECK(differs);
  CHECK_NOTHROW(a.validate());
}

}  // TEST_SUITE
