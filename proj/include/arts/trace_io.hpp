#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include <json.hpp>

#include "arts/baseline.hpp"
#include "arts/channel_sim.hpp"
#include "arts/selection.hpp"
#include "arts/trace.hpp"

namespace arts {

enum class TraceSource { experimental, simulated };

// Metadata carried in the `#` comment block of a trace file. Simulated
// traces echo the generating ChannelSpec and seed so a file can be
// regenerated byte-identically.
struct TraceFileHeader {
  int format_version = 1;
  double packet_duration_s = 1e-3;
  TraceSource source = TraceSource::experimental;
  std::optional<ChannelSpec> channel;
  std::optional<std::uint64_t> seed;
};

// Trace CSV: `# key=value` comment lines for the header, then the column row
// `index,probe_voltage,sifted_count,error_count`, then one row per packet.
// Reals carry 17 significant digits; lines end with '\n'.
void write_trace(std::ostream& out, const Trace& trace, const TraceFileHeader& header);
void write_trace_file(const std::filesystem::path& path, const Trace& trace,
                      const TraceFileHeader& header);

struct LoadedTrace {
  TraceFileHeader header;
  Trace trace;
};

// Strict parse: any malformed header key, column mismatch, bad field,
// non-monotone index or invariant violation throws ParseError naming the
// offending row; nothing is returned partially parsed.
LoadedTrace read_trace(std::istream& in, std::string_view source_name = "<stream>");
LoadedTrace read_trace_file(const std::filesystem::path& path);

// Results documents. All three kinds share `format_version` and `kind` and
// echo their inputs in full; see README for the field-by-field schema.
nlohmann::json to_json(const PredictionCurve& curve);
nlohmann::json selection_sweep_json(std::span<const SelectionOutcome> outcomes,
                                    std::string_view trace_name);
nlohmann::json to_json(const ComparisonResult& result);

void write_results(std::ostream& out, const nlohmann::json& doc);
void write_results_file(const std::filesystem::path& path, const nlohmann::json& doc);

// Parse + schema-validate a results document.
nlohmann::json read_results(std::istream& in, std::string_view source_name = "<stream>");
nlohmann::json read_results_file(const std::filesystem::path& path);

}  // namespace arts
