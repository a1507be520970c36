#include "arts/channel_sim.hpp"

#include <cmath>
#include <stdexcept>

#include "arts/rng.hpp"

namespace arts {
namespace {

PacketRecord make_packet(const ChannelSpec& spec, std::uint64_t seed,
                         std::uint64_t index) {
  auto gen = rng::Xoshiro256pp::stream(seed, index);
  const double sigma = std::sqrt(spec.fade.sigma_sq());
  const double eta = std::exp(spec.fade.log_location() + sigma * gen.normal());

  const std::uint64_t signal = gen.poisson(spec.mean_signal_per_packet * eta);
  const std::uint64_t background = gen.poisson(spec.background_per_packet);
  const std::uint64_t signal_errors = gen.binomial(signal, spec.intrinsic_qber);
  const std::uint64_t background_errors = gen.binomial(background, 0.5);

  PacketRecord p;
  p.index = index;
  p.probe_voltage = eta;  // perfect correlation, unit probe gain
  p.sifted_count = signal + background;
  p.error_count = signal_errors + background_errors;
  return p;
}

}  // namespace

void ChannelSpec::validate() const {
  if (!(mean_signal_per_packet > 0.0))
    throw std::domain_error("ChannelSpec: mean_signal_per_packet must be positive");
  if (!(background_per_packet >= 0.0))
    throw std::domain_error("ChannelSpec: background_per_packet must be non-negative");
  if (!(intrinsic_qber >= 0.0 && intrinsic_qber <= 0.5))
    throw std::domain_error("ChannelSpec: intrinsic_qber must lie in [0, 0.5]");
  if (fade.mean_intensity() != 1.0)
    throw std::domain_error("ChannelSpec: fade.mean_intensity must be 1 (normalized)");
}

double background_from_snr(double mu, double snr) {
  if (!(mu > 0.0)) throw std::domain_error("background_from_snr: mu must be positive");
  if (!(snr > 1.0))
    throw std::domain_error("background_from_snr: snr must exceed 1 (N_b undefined otherwise)");
  return mu / (snr - 1.0);
}

Trace generate(const ChannelSpec& spec, std::size_t n_packets, std::uint64_t seed) {
  spec.validate();
  if (n_packets == 0) throw std::invalid_argument("generate: n_packets must be >= 1");
  Trace trace;
  trace.packets.resize(n_packets);
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_packets); ++i)
    trace.packets[static_cast<std::size_t>(i)] =
        make_packet(spec, seed, static_cast<std::uint64_t>(i));
  return trace;
}

Trace generate_serial(const ChannelSpec& spec, std::size_t n_packets,
                      std::uint64_t seed) {
  spec.validate();
  if (n_packets == 0) throw std::invalid_argument("generate: n_packets must be >= 1");
  Trace trace;
  trace.packets.resize(n_packets);
  for (std::size_t i = 0; i < n_packets; ++i)
    trace.packets[i] = make_packet(spec, seed, static_cast<std::uint64_t>(i));
  return trace;
}

}  // namespace arts
