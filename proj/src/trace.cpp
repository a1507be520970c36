#include "arts/trace.hpp"

#include <stdexcept>
#include <string>

namespace arts {

void Trace::validate() const {
  if (packets.empty()) throw std::invalid_argument("Trace: must contain at least one packet");
  if (!(packet_duration_s > 0.0))
    throw std::invalid_argument("Trace: packet_duration_s must be positive");
  for (std::size_t i = 0; i < packets.size(); ++i) {
    const auto& p = packets[i];
    const std::string at = "Trace: packet " + std::to_string(i);
    if (i > 0 && packets[i - 1].index >= p.index)
      throw std::invalid_argument(at + ": indices must be strictly increasing");
    if (!(p.probe_voltage >= 0.0))
      throw std::invalid_argument(at + ": probe_voltage must be non-negative");
    if (p.error_count > p.sifted_count)
      throw std::invalid_argument(at + ": error_count exceeds sifted_count");
  }
}

std::uint64_t Trace::total_sifted() const {
  std::uint64_t sum = 0;
  for (const auto& p : packets) sum += p.sifted_count;
  return sum;
}

std::uint64_t Trace::total_errors() const {
  std::uint64_t sum = 0;
  for (const auto& p : packets) sum += p.error_count;
  return sum;
}

}  // namespace arts
