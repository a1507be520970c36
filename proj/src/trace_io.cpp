#include "arts/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "arts/errors.hpp"

namespace arts {
namespace {

constexpr std::string_view kColumnHeader = "index,probe_voltage,sifted_count,error_count";

std::string format_real(double v) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

template <typename T>
T parse_number(std::string_view text, const std::string& source, std::size_t row,
               std::string_view field) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(source, row,
                     "field '" + std::string(field) + "': cannot parse '" +
                         std::string(text) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace, const TraceFileHeader& header) {
  trace.validate();
  if (header.format_version != 1)
    throw std::invalid_argument("write_trace: format_version must be 1");
  if (!(header.packet_duration_s > 0.0))
    throw std::invalid_argument("write_trace: packet_duration_s must be positive");
  if (header.source == TraceSource::experimental && header.channel)
    throw std::invalid_argument("write_trace: channel echo is only valid for simulated traces");

  out << "# format_version=" << header.format_version << '\n';
  out << "# packet_duration_s=" << format_real(header.packet_duration_s) << '\n';
  out << "# source="
      << (header.source == TraceSource::simulated ? "simulated" : "experimental") << '\n';
  if (header.channel) {
    const ChannelSpec& c = *header.channel;
    c.validate();
    out << "# mu=" << format_real(c.mean_signal_per_packet) << '\n';
    out << "# background_per_packet=" << format_real(c.background_per_packet) << '\n';
    out << "# intrinsic_qber=" << format_real(c.intrinsic_qber) << '\n';
    out << "# sigma_sq=" << format_real(c.fade.sigma_sq()) << '\n';
  }
  if (header.seed) out << "# seed=" << *header.seed << '\n';
  out << kColumnHeader << '\n';

  std::array<char, 128> buf{};
  for (const auto& p : trace.packets) {
    const int n = std::snprintf(buf.data(), buf.size(), "%llu,%.17g,%llu,%llu\n",
                                static_cast<unsigned long long>(p.index), p.probe_voltage,
                                static_cast<unsigned long long>(p.sifted_count),
                                static_cast<unsigned long long>(p.error_count));
    out.write(buf.data(), n);
  }
  if (!out) throw IoError("write_trace: stream write failed");
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace,
                      const TraceFileHeader& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_trace: cannot open '" + path.string() + "' for writing");
  write_trace(out, trace, header);
  out.flush();
  if (!out) throw IoError("write_trace: failed writing '" + path.string() + "'");
}

LoadedTrace read_trace(std::istream& in, std::string_view source_name) {
  const std::string src(source_name);
  std::size_t row = 0;
  std::string line;

  std::map<std::string, std::string> meta;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    ++row;
    std::string_view view = trim(line);
    if (!view.empty() && view.front() == '#') {
      view.remove_prefix(1);
      view = trim(view);
      const auto eq = view.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(src, row, "malformed header line (expected key=value)");
      const std::string key(trim(view.substr(0, eq)));
      const std::string value(trim(view.substr(eq + 1)));
      if (meta.count(key)) throw ParseError(src, row, "duplicate header key '" + key + "'");
      meta[key] = value;
      continue;
    }
    if (view != kColumnHeader)
      throw ParseError(src, row,
                       "expected column header '" + std::string(kColumnHeader) + "'");
    saw_columns = true;
    break;
  }
  if (!saw_columns) throw ParseError(src, "missing column header");

  static const char* kKnown[] = {"format_version", "packet_duration_s", "source",
                                 "mu", "background_per_packet", "intrinsic_qber",
                                 "sigma_sq", "seed"};
  for (const auto& [key, value] : meta) {
    bool known = false;
    for (const char* k : kKnown) known |= key == k;
    if (!known) throw ParseError(src, "unknown header key '" + key + "'");
  }
  for (const char* required : {"format_version", "packet_duration_s", "source"})
    if (!meta.count(required))
      throw ParseError(src, "missing header key '" + std::string(required) + "'");

  TraceFileHeader header;
  header.format_version = parse_number<int>(meta["format_version"], src, 0, "format_version");
  if (header.format_version != 1)
    throw ParseError(src, "unsupported format_version " + meta["format_version"]);
  header.packet_duration_s =
      parse_number<double>(meta["packet_duration_s"], src, 0, "packet_duration_s");
  if (!(header.packet_duration_s > 0.0))
    throw ParseError(src, "packet_duration_s must be positive");
  if (meta["source"] == "simulated") {
    header.source = TraceSource::simulated;
  } else if (meta["source"] == "experimental") {
    header.source = TraceSource::experimental;
  } else {
    throw ParseError(src, "source must be 'experimental' or 'simulated'");
  }

  const bool has_spec = meta.count("mu") || meta.count("background_per_packet") ||
                        meta.count("intrinsic_qber") || meta.count("sigma_sq");
  if (has_spec) {
    if (header.source != TraceSource::simulated)
      throw ParseError(src, "channel parameters are only valid for simulated traces");
    for (const char* k : {"mu", "background_per_packet", "intrinsic_qber", "sigma_sq"})
      if (!meta.count(k))
        throw ParseError(src, "incomplete channel echo: missing '" + std::string(k) + "'");
    ChannelSpec spec;
    spec.mean_signal_per_packet = parse_number<double>(meta["mu"], src, 0, "mu");
    spec.background_per_packet =
        parse_number<double>(meta["background_per_packet"], src, 0, "background_per_packet");
    spec.intrinsic_qber = parse_number<double>(meta["intrinsic_qber"], src, 0, "intrinsic_qber");
    spec.fade = LognormalFade(1.0, parse_number<double>(meta["sigma_sq"], src, 0, "sigma_sq"));
    spec.validate();
    header.channel = spec;
  }
  if (meta.count("seed")) {
    if (header.source != TraceSource::simulated)
      throw ParseError(src, "seed is only valid for simulated traces");
    header.seed = parse_number<std::uint64_t>(meta["seed"], src, 0, "seed");
  }

  Trace trace;
  trace.packet_duration_s = header.packet_duration_s;
  bool have_prev = false;
  std::uint64_t prev_index = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view view = trim(line);
    if (view.empty()) throw ParseError(src, row, "empty data row");

    std::array<std::string_view, 4> fields;
    std::size_t start = 0, field = 0;
    for (std::size_t i = 0; i <= view.size(); ++i) {
      if (i == view.size() || view[i] == ',') {
        if (field >= 4) throw ParseError(src, row, "too many columns (expected 4)");
        fields[field++] = view.substr(start, i - start);
        start = i + 1;
      }
    }
    if (field != 4) throw ParseError(src, row, "too few columns (expected 4)");

    PacketRecord p;
    p.index = parse_number<std::uint64_t>(fields[0], src, row, "index");
    p.probe_voltage = parse_number<double>(fields[1], src, row, "probe_voltage");
    p.sifted_count = parse_number<std::uint64_t>(fields[2], src, row, "sifted_count");
    p.error_count = parse_number<std::uint64_t>(fields[3], src, row, "error_count");

    if (!(p.probe_voltage >= 0.0))
      throw ParseError(src, row, "field 'probe_voltage': must be non-negative");
    if (p.error_count > p.sifted_count)
      throw ParseError(src, row, "field 'error_count': exceeds sifted_count");
    if (have_prev && p.index <= prev_index)
      throw ParseError(src, row, "field 'index': must be strictly increasing");
    prev_index = p.index;
    have_prev = true;
    trace.packets.push_back(p);
  }
  if (trace.packets.empty()) throw ParseError(src, "trace contains no packets");
  trace.validate();
  return {header, trace};
}

LoadedTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_trace: cannot open '" + path.string() + "'");
  return read_trace(in, path.string());
}

namespace {

nlohmann::json inputs_json(const PredictionInputs& in) {
  return {{"mean_v", in.fade.mean_intensity()},
          {"sigma_sq", in.fade.sigma_sq()},
          {"background_per_packet", in.background_per_packet},
          {"intrinsic_qber", in.intrinsic_qber},
          {"sifted_at_zero", in.sifted_at_zero},
          {"packets_at_zero", in.packets_at_zero}};
}

}  // namespace

nlohmann::json to_json(const PredictionCurve& curve) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["kind"] = "prediction_curve";
  doc["inputs"] = inputs_json(curve.inputs);
  doc["thresholds"] = curve.thresholds;
  doc["packets"] = curve.packets;
  doc["sifted"] = curve.sifted;
  doc["counts_per_packet"] = curve.counts_per_packet;
  doc["qber"] = curve.qber;
  doc["rate"] = curve.rate;
  return doc;
}

nlohmann::json selection_sweep_json(std::span<const SelectionOutcome> outcomes,
                                    std::string_view trace_name) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["kind"] = "selection_sweep";
  doc["inputs"] = {{"trace", std::string(trace_name)}};
  auto& thresholds = doc["thresholds"] = nlohmann::json::array();
  auto& packets = doc["selected_packets"] = nlohmann::json::array();
  auto& sifted = doc["sifted"] = nlohmann::json::array();
  auto& errors = doc["errors"] = nlohmann::json::array();
  auto& cpp = doc["counts_per_packet"] = nlohmann::json::array();
  auto& qber = doc["qber"] = nlohmann::json::array();
  auto& rate = doc["rate"] = nlohmann::json::array();
  for (const auto& o : outcomes) {
    thresholds.push_back(o.threshold);
    packets.push_back(o.selected_packets);
    sifted.push_back(o.sifted_total);
    errors.push_back(o.error_total);
    cpp.push_back(o.counts_per_packet);
    if (o.qber)
      qber.push_back(*o.qber);
    else
      qber.push_back(nullptr);
    rate.push_back(o.rate);
  }
  return doc;
}

nlohmann::json to_json(const ComparisonResult& result) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["kind"] = "strategy_comparison";
  doc["inputs"] = {{"intrinsic_qber", result.config.intrinsic_qber},
                   {"sigma_sq", result.config.sigma_sq},
                   {"packets_per_point", result.config.packets_per_point},
                   {"seed", result.config.seed},
                   {"mu_grid", result.config.mu_grid},
                   {"snr_grid", result.config.snr_grid}};
  auto& grid = doc["grid"] = nlohmann::json::array();
  for (const auto& g : result.grid)
    grid.push_back({{"mu", g.mu},
                    {"snr", g.snr},
                    {"background_per_packet", g.background_per_packet}});
  auto& strategies = doc["strategies"] = nlohmann::json::array();
  for (const auto& s : result.strategies) {
    nlohmann::json entry;
    entry["name"] = std::string(to_string(s.name));
    entry["rates"] = s.rates;
    entry["optimal_thresholds"] = s.optimal_thresholds;
    strategies.push_back(entry);
  }
  return doc;
}

void write_results(std::ostream& out, const nlohmann::json& doc) {
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write_results: stream write failed");
}

void write_results_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_results: cannot open '" + path.string() + "' for writing");
  write_results(out, doc);
  out.flush();
  if (!out) throw IoError("write_results: failed writing '" + path.string() + "'");
}

namespace {

void require(bool ok, const std::string& src, const std::string& what) {
  if (!ok) throw ParseError(src, what);
}

void require_number_array(const nlohmann::json& doc, const char* key, std::size_t len,
                          const std::string& src, bool allow_null = false) {
  require(doc.contains(key) && doc[key].is_array(), src,
          std::string("missing array '") + key + "'");
  require(doc[key].size() == len, src,
          std::string("array '") + key + "' length mismatch");
  for (const auto& v : doc[key])
    require(v.is_number() || (allow_null && v.is_null()), src,
            std::string("array '") + key + "' contains a non-numeric entry");
}

void validate_results(const nlohmann::json& doc, const std::string& src) {
  require(doc.is_object(), src, "document is not a JSON object");
  require(doc.contains("format_version") && doc["format_version"].is_number_integer(), src,
          "missing integer 'format_version'");
  require(doc["format_version"].get<int>() == 1, src, "unsupported format_version");
  require(doc.contains("kind") && doc["kind"].is_string(), src, "missing string 'kind'");
  const std::string kind = doc["kind"].get<std::string>();
  require(doc.contains("inputs") && doc["inputs"].is_object(), src,
          "missing object 'inputs'");

  if (kind == "prediction_curve") {
    for (const char* k : {"mean_v", "sigma_sq", "background_per_packet", "intrinsic_qber",
                          "sifted_at_zero", "packets_at_zero"})
      require(doc["inputs"].contains(k) && doc["inputs"][k].is_number(), src,
              std::string("inputs: missing number '") + k + "'");
    require(doc.contains("thresholds") && doc["thresholds"].is_array() &&
                !doc["thresholds"].empty(),
            src, "missing non-empty array 'thresholds'");
    const std::size_t n = doc["thresholds"].size();
    for (const char* k : {"thresholds", "packets", "sifted", "counts_per_packet", "qber", "rate"})
      require_number_array(doc, k, n, src);
  } else if (kind == "selection_sweep") {
    require(doc["inputs"].contains("trace") && doc["inputs"]["trace"].is_string(), src,
            "inputs: missing string 'trace'");
    require(doc.contains("thresholds") && doc["thresholds"].is_array() &&
                !doc["thresholds"].empty(),
            src, "missing non-empty array 'thresholds'");
    const std::size_t n = doc["thresholds"].size();
    for (const char* k : {"thresholds", "selected_packets", "sifted", "errors",
                          "counts_per_packet", "rate"})
      require_number_array(doc, k, n, src);
    require_number_array(doc, "qber", n, src, /*allow_null=*/true);
  } else if (kind == "strategy_comparison") {
    for (const char* k : {"intrinsic_qber", "sigma_sq", "packets_per_point", "seed"})
      require(doc["inputs"].contains(k) && doc["inputs"][k].is_number(), src,
              std::string("inputs: missing number '") + k + "'");
    for (const char* k : {"mu_grid", "snr_grid"})
      require(doc["inputs"].contains(k) && doc["inputs"][k].is_array() &&
                  !doc["inputs"][k].empty(),
              src, std::string("inputs: missing non-empty array '") + k + "'");
    const std::size_t n = doc["inputs"]["mu_grid"].size() * doc["inputs"]["snr_grid"].size();
    require(doc.contains("grid") && doc["grid"].is_array() && doc["grid"].size() == n, src,
            "grid size does not match mu_grid x snr_grid");
    for (const auto& g : doc["grid"])
      for (const char* k : {"mu", "snr", "background_per_packet"})
        require(g.is_object() && g.contains(k) && g[k].is_number(), src,
                std::string("grid entry: missing number '") + k + "'");
    require(doc.contains("strategies") && doc["strategies"].is_array() &&
                doc["strategies"].size() == 3,
            src, "expected 3 strategies");
    for (const auto& s : doc["strategies"]) {
      require(s.is_object() && s.contains("name") && s["name"].is_string(), src,
              "strategy entry: missing string 'name'");
      const std::string name = s["name"].get<std::string>();
      require(name == "none" || name == "count_threshold" || name == "arts", src,
              "strategy entry: unknown name '" + name + "'");
      require(s.contains("rates") && s["rates"].is_array() && s["rates"].size() == n, src,
              "strategy entry: 'rates' length mismatch");
      require(s.contains("optimal_thresholds") && s["optimal_thresholds"].is_array() &&
                  (s["optimal_thresholds"].empty() || s["optimal_thresholds"].size() == n),
              src, "strategy entry: 'optimal_thresholds' length mismatch");
    }
  } else {
    throw ParseError(src, "unknown results kind '" + kind + "'");
  }
}

}  // namespace

nlohmann::json read_results(std::istream& in, std::string_view source_name) {
  const std::string src(source_name);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(src, std::string("invalid JSON: ") + e.what());
  }
  validate_results(doc, src);
  return doc;
}

nlohmann::json read_results_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_results: cannot open '" + path.string() + "'");
  return read_results(in, path.string());
}

}  // namespace arts
