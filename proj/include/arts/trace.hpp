#pragma once

#include <cstdint>
#include <vector>

namespace arts {

// One acquisition packet: probe amplitude V_i, sifted detections S_i and
// errors E_i counted over the packet window.
struct PacketRecord {
  std::uint64_t index = 0;
  double probe_voltage = 0.0;  // volts for experimental traces, normalized intensity for simulated ones
  std::uint64_t sifted_count = 0;
  std::uint64_t error_count = 0;
};

// Ordered acquisition of packets. Invariants (checked by validate): at least
// one packet, strictly increasing indices, probe_voltage >= 0 and
// error_count <= sifted_count per packet, positive duration.
struct Trace {
  std::vector<PacketRecord> packets;
  double packet_duration_s = 1e-3;

  void validate() const;  // throws std::invalid_argument naming the offending packet
  std::uint64_t total_sifted() const;
  std::uint64_t total_errors() const;
};

}  // namespace arts
