#pragma once

#include <cstdint>

#include "arts/fading_model.hpp"
#include "arts/trace.hpp"

namespace arts {

// Probe/signal dependence of the simulated channel. Only the fully
// correlated mode is implemented; the enumeration is the extension point for
// partially correlated channels.
enum class Correlation { perfect };

// Ground truth of a simulated channel: per-packet mean signal yield at unit
// transmissivity, background level, intrinsic QBER, and the fade statistics.
// The fade mean is fixed at 1 so the probe voltage doubles as the
// transmissivity estimate.
struct ChannelSpec {
  double mean_signal_per_packet = 1.0;  // mu
  double background_per_packet = 0.0;   // N_b
  double intrinsic_qber = 0.0;          // <Q>
  LognormalFade fade{1.0, 1.0};
  Correlation correlation = Correlation::perfect;

  void validate() const;
};

// N_b from the SNR convention (signal plus background over background):
// SNR = (mu + N_b)/N_b, so N_b = mu/(snr - 1). snr must exceed 1.
double background_from_snr(double mu, double snr);

// Per packet: draw a fade eta, set the probe voltage to eta, draw
// Poisson(mu*eta) signal counts plus Poisson(N_b) background counts, and mark
// errors as Binomial(signal, <Q>) + Binomial(background, 1/2). All randomness
// comes from a per-packet stream derived from (seed, packet index), so the
// OpenMP version is bit-identical to the serial reference.
Trace generate(const ChannelSpec& spec, std::size_t n_packets, std::uint64_t seed);
Trace generate_serial(const ChannelSpec& spec, std::size_t n_packets, std::uint64_t seed);

}  // namespace arts
