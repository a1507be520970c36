// Command-line front end: simulate traces, sweep selections, evaluate the
// analytic predictors, optimize thresholds, compare strategies and fit probe
// distributions.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arts/baseline.hpp"
#include "arts/channel_sim.hpp"
#include "arts/errors.hpp"
#include "arts/fading_model.hpp"
#include "arts/grid.hpp"
#include "arts/selection.hpp"
#include "arts/trace_io.hpp"

namespace {

// Grid flag of the form start:stop:count, expanded linearly by default or
// geometrically with --log.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
};

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec g;
  char trailing = 0;
  unsigned long long count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%llu%c", &g.start, &g.stop, &count, &trailing) != 3 ||
      count == 0)
    throw CLI::ValidationError("grid", "expected start:stop:count with count >= 1, got '" + text + "'");
  g.count = static_cast<std::size_t>(count);
  return g;
}

std::vector<double> expand_grid(const GridSpec& g, bool log_spaced) {
  if (g.count == 1 && g.start != g.stop)
    throw CLI::ValidationError("grid", "count 1 requires start == stop");
  return log_spaced ? arts::logspace(g.start, g.stop, g.count)
                    : arts::linspace(g.start, g.stop, g.count);
}

// When --out is absent the results document goes to standard output and the
// human-readable summary moves to standard error so the document stays
// machine-readable.
std::ostream& summary_stream(bool out_to_stdout) {
  return out_to_stdout ? std::cerr : std::cout;
}

void emit_results(const std::optional<std::string>& out_path, const nlohmann::json& doc) {
  if (out_path)
    arts::write_results_file(*out_path, doc);
  else
    arts::write_results(std::cout, doc);
}

void print_outcome_table(std::ostream& os, const std::vector<arts::SelectionOutcome>& curve) {
  os << "threshold    N_P        N_S        s           Q           R\n";
  char line[160];
  for (const auto& o : curve) {
    std::snprintf(line, sizeof(line), "%-12.6g %-10llu %-10llu %-11.6g %-11s %-11.6g\n",
                  o.threshold, static_cast<unsigned long long>(o.selected_packets),
                  static_cast<unsigned long long>(o.sifted_total), o.counts_per_packet,
                  o.qber ? std::to_string(*o.qber).c_str() : "undefined", o.rate);
    os << line;
  }
}

arts::Trace load_trace_or_fail(const std::string& path) {
  return arts::read_trace_file(path).trace;
}

int run(int argc, char** argv) {
  CLI::App app{"ARTS probe-threshold post-selection toolkit for turbulent free-space QKD"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a Monte Carlo trace of correlated probe/quantum packets");
  double sim_mu = 10.0, sim_qber = 0.03, sim_sigma_sq = 1.0, sim_duration = 1e-3;
  double sim_snr = 0.0, sim_nb = 0.0;
  std::size_t sim_packets = 100000;
  std::uint64_t sim_seed = 1;
  std::optional<std::string> sim_out;
  simulate->add_option("--mu", sim_mu, "Mean signal sifted counts per packet at unit transmissivity")
      ->required();
  auto* snr_opt = simulate->add_option("--snr", sim_snr,
                                       "Signal-to-noise ratio (mu + N_b)/N_b; must exceed 1");
  auto* nb_opt = simulate->add_option("--n-b", sim_nb, "Background counts per packet");
  snr_opt->excludes(nb_opt);
  simulate->add_option("--qber", sim_qber, "Intrinsic channel QBER, in [0, 0.5]")->required();
  simulate->add_option("--sigma-sq", sim_sigma_sq, "Log-normal fading parameter sigma^2")
      ->required();
  simulate->add_option("--packets", sim_packets, "Number of packets to simulate")->required();
  simulate->add_option("--seed", sim_seed, "RNG seed (trace is byte-reproducible)")->required();
  simulate->add_option("--duration", sim_duration, "Packet duration in seconds (default 1 ms)");
  simulate->add_option("--out", sim_out, "Trace CSV path (standard output when absent)");

  // ---- select ----
  auto* select_cmd = app.add_subcommand(
      "select", "Sweep probe thresholds over a trace and report Q(T), R(T)");
  std::string sel_trace;
  double sel_threshold = -1.0;
  std::string sel_grid_text;
  bool sel_log = false;
  std::optional<std::string> sel_out;
  select_cmd->add_option("--trace", sel_trace, "Input trace CSV")->required();
  auto* sel_thr_opt =
      select_cmd->add_option("--threshold", sel_threshold, "Single probe threshold (volts)");
  auto* sel_grid_opt = select_cmd->add_option(
      "--thresholds", sel_grid_text, "Threshold grid start:stop:count (volts)");
  sel_thr_opt->excludes(sel_grid_opt);
  select_cmd->add_flag("--log", sel_log, "Space the threshold grid geometrically");
  select_cmd->add_option("--out", sel_out, "Results JSON path (standard output when absent)");

  // ---- predict ----
  auto* predict = app.add_subcommand(
      "predict", "Evaluate the analytic N_P, N_S, Q_th, R_th curves over a threshold grid");
  double pre_mean_v = 1.0, pre_sigma_sq = 1.0, pre_nb = 0.0, pre_qber = 0.0;
  double pre_ns0 = 0.0, pre_np0 = 0.0;
  std::string pre_grid_text;
  bool pre_log = false;
  std::optional<std::string> pre_out;
  predict->add_option("--mean-v", pre_mean_v, "Fitted mean probe amplitude <V>")->required();
  predict->add_option("--sigma-sq", pre_sigma_sq, "Fitted log-normal sigma^2")->required();
  predict->add_option("--n-b", pre_nb, "Background counts per packet N_b")->required();
  predict->add_option("--qber", pre_qber, "Intrinsic channel QBER <Q>")->required();
  predict->add_option("--n-s0", pre_ns0, "Measured unselected sifted total N_S(0)")->required();
  predict->add_option("--n-p0", pre_np0, "Measured unselected packet total N_P(0)")->required();
  predict->add_option("--thresholds", pre_grid_text, "Threshold grid start:stop:count (volts)")
      ->required();
  predict->add_flag("--log", pre_log, "Space the threshold grid geometrically");
  predict->add_option("--out", pre_out, "Results JSON path (standard output when absent)");

  // ---- optimize ----
  auto* optimize = app.add_subcommand(
      "optimize", "Find the rate-maximizing probe threshold of the analytic model");
  double opt_mean_v = 1.0, opt_sigma_sq = 1.0, opt_nb = 0.0, opt_qber = 0.0;
  double opt_ns0 = 0.0, opt_np0 = 0.0, opt_tmax = 0.0;
  std::size_t opt_grid_points = 1500;
  std::string opt_from_trace;
  optimize->add_option("--from-trace", opt_from_trace,
                       "Fit <V>, sigma^2, N_S(0), N_P(0) from this trace instead of flags");
  optimize->add_option("--mean-v", opt_mean_v, "Fitted mean probe amplitude <V>");
  optimize->add_option("--sigma-sq", opt_sigma_sq, "Fitted log-normal sigma^2");
  optimize->add_option("--n-b", opt_nb, "Background counts per packet N_b")->required();
  optimize->add_option("--qber", opt_qber, "Intrinsic channel QBER <Q>")->required();
  optimize->add_option("--n-s0", opt_ns0, "Measured unselected sifted total N_S(0)");
  optimize->add_option("--n-p0", opt_np0, "Measured unselected packet total N_P(0)");
  optimize->add_option("--t-max", opt_tmax,
                       "Upper end of the search range (default: fade 99.9th percentile)");
  optimize->add_option("--grid-points", opt_grid_points, "Scan density (>= 1000)");

  // ---- compare ----
  auto* compare = app.add_subcommand(
      "compare", "Monte Carlo comparison of ARTS vs count-threshold vs no selection");
  double cmp_qber = 0.03, cmp_sigma_sq = 1.0;
  std::vector<double> cmp_mu_grid, cmp_snr_grid;
  std::size_t cmp_packets = 100000;
  std::uint64_t cmp_seed = 1;
  std::optional<std::string> cmp_out;
  compare->add_option("--qber", cmp_qber, "Intrinsic channel QBER <Q>")->required();
  compare->add_option("--sigma-sq", cmp_sigma_sq, "Log-normal fading parameter sigma^2")
      ->required();
  compare->add_option("--mu-grid", cmp_mu_grid, "Mean sifted counts per packet (list)")
      ->required()
      ->delimiter(',');
  compare->add_option("--snr-grid", cmp_snr_grid, "SNR values (list, each > 1)")
      ->required()
      ->delimiter(',');
  compare->add_option("--packets", cmp_packets, "Packets per grid point (>= 10^4)");
  compare->add_option("--seed", cmp_seed, "Base seed; per-point seeds derive from it");
  compare->add_option("--out", cmp_out, "Results JSON path (standard output when absent)");

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "Maximum-likelihood log-normal fit of probe amplitudes");
  std::string fit_trace, fit_samples;
  auto* fit_trace_opt = fit->add_option("--trace", fit_trace, "Fit the probe column of this trace");
  auto* fit_samples_opt =
      fit->add_option("--samples", fit_samples, "Fit a plain text file, one amplitude per line");
  fit_trace_opt->excludes(fit_samples_opt);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (snr_opt->count() == 0 && nb_opt->count() == 0)
      throw CLI::RequiredError("simulate: exactly one of --snr/--n-b");
    arts::ChannelSpec spec;
    spec.mean_signal_per_packet = sim_mu;
    spec.background_per_packet =
        snr_opt->count() ? arts::background_from_snr(sim_mu, sim_snr) : sim_nb;
    spec.intrinsic_qber = sim_qber;
    spec.fade = arts::LognormalFade(1.0, sim_sigma_sq);

    auto trace = arts::generate(spec, sim_packets, sim_seed);
    trace.packet_duration_s = sim_duration;
    arts::TraceFileHeader header;
    header.packet_duration_s = sim_duration;
    header.source = arts::TraceSource::simulated;
    header.channel = spec;
    header.seed = sim_seed;
    if (sim_out)
      arts::write_trace_file(*sim_out, trace, header);
    else
      arts::write_trace(std::cout, trace, header);

    const double mean_counts =
        static_cast<double>(trace.total_sifted()) / static_cast<double>(sim_packets);
    const double qber = trace.total_sifted() == 0
                            ? 0.0
                            : static_cast<double>(trace.total_errors()) /
                                  static_cast<double>(trace.total_sifted());
    summary_stream(!sim_out) << "simulated " << sim_packets << " packets: mean counts/packet = "
                             << mean_counts << ", empirical QBER = " << qber << "\n";
    return 0;
  }

  if (select_cmd->parsed()) {
    if (sel_thr_opt->count() == 0 && sel_grid_opt->count() == 0)
      throw CLI::RequiredError("select: one of --threshold/--thresholds");
    const auto trace = load_trace_or_fail(sel_trace);
    std::vector<double> thresholds;
    if (sel_thr_opt->count())
      thresholds.push_back(sel_threshold);
    else
      thresholds = expand_grid(parse_grid_spec(sel_grid_text), sel_log);
    const auto curve = arts::empirical_curve(trace, thresholds);
    print_outcome_table(summary_stream(!sel_out), curve);
    emit_results(sel_out, arts::selection_sweep_json(curve, sel_trace));
    return 0;
  }

  if (predict->parsed()) {
    arts::PredictionInputs in;
    in.fade = arts::LognormalFade(pre_mean_v, pre_sigma_sq);
    in.background_per_packet = pre_nb;
    in.intrinsic_qber = pre_qber;
    in.sifted_at_zero = pre_ns0;
    in.packets_at_zero = pre_np0;
    const auto thresholds = expand_grid(parse_grid_spec(pre_grid_text), pre_log);
    const auto curve = arts::prediction_curve(in, thresholds);

    auto& os = summary_stream(!pre_out);
    os << "threshold    N_P         N_S         s           Q_th        R_th\n";
    char line[160];
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
      std::snprintf(line, sizeof(line), "%-12.6g %-11.6g %-11.6g %-11.6g %-11.6g %-11.6g\n",
                    curve.thresholds[i], curve.packets[i], curve.sifted[i],
                    curve.counts_per_packet[i], curve.qber[i], curve.rate[i]);
      os << line;
    }
    emit_results(pre_out, arts::to_json(curve));
    return 0;
  }

  if (optimize->parsed()) {
    arts::PredictionInputs in;
    if (!opt_from_trace.empty()) {
      const auto trace = load_trace_or_fail(opt_from_trace);
      std::vector<double> probes;
      probes.reserve(trace.packets.size());
      for (const auto& p : trace.packets) probes.push_back(p.probe_voltage);
      in.fade = arts::fit_mle(probes);
      in.sifted_at_zero = static_cast<double>(trace.total_sifted());
      in.packets_at_zero = static_cast<double>(trace.packets.size());
    } else {
      for (const auto* opt : {"--mean-v", "--sigma-sq", "--n-s0", "--n-p0"})
        if (optimize->count(opt) == 0)
          throw CLI::RequiredError(std::string("optimize: ") + opt + " (or --from-trace)");
      in.fade = arts::LognormalFade(opt_mean_v, opt_sigma_sq);
      in.sifted_at_zero = opt_ns0;
      in.packets_at_zero = opt_np0;
    }
    in.background_per_packet = opt_nb;
    in.intrinsic_qber = opt_qber;

    arts::ThresholdSearch search;
    search.t_max = opt_tmax;
    search.grid_points = opt_grid_points;
    const auto best = arts::optimize_threshold(in, search);
    if (best.no_key) {
      std::cout << "no key extractable at any threshold (rate 0 everywhere)\n";
    } else {
      std::cout << "T* = " << best.threshold << ", R(T*) = " << best.rate
                << ", Q_th(T*) = " << arts::predict_qber(in, best.threshold) << "\n";
    }
    return 0;
  }

  if (compare->parsed()) {
    arts::ComparisonConfig config;
    config.mu_grid = cmp_mu_grid;
    config.snr_grid = cmp_snr_grid;
    config.intrinsic_qber = cmp_qber;
    config.sigma_sq = cmp_sigma_sq;
    config.packets_per_point = cmp_packets;
    config.seed = cmp_seed;
    const auto result = arts::compare_strategies(config);

    auto& os = summary_stream(!cmp_out);
    os << "mu        SNR       R_none      R_count(k*)          R_arts(T*)\n";
    char line[200];
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
      std::snprintf(line, sizeof(line), "%-9.4g %-9.4g %-11.6g %-11.6g (k=%-5.0f) %-11.6g (T=%.4g)\n",
                    result.grid[i].mu, result.grid[i].snr, result.strategies[0].rates[i],
                    result.strategies[1].rates[i], result.strategies[1].optimal_thresholds[i],
                    result.strategies[2].rates[i], result.strategies[2].optimal_thresholds[i]);
      os << line;
    }
    emit_results(cmp_out, arts::to_json(result));
    return 0;
  }

  if (fit->parsed()) {
    std::vector<double> samples;
    if (fit_trace_opt->count()) {
      const auto trace = load_trace_or_fail(fit_trace);
      samples.reserve(trace.packets.size());
      for (const auto& p : trace.packets) samples.push_back(p.probe_voltage);
    } else if (fit_samples_opt->count()) {
      std::ifstream in(fit_samples);
      if (!in) throw arts::IoError("fit: cannot open '" + fit_samples + "'");
      double v = 0.0;
      while (in >> v) samples.push_back(v);
      if (!in.eof())
        throw arts::ParseError(fit_samples, "file contains non-numeric content");
    } else {
      throw CLI::RequiredError("fit: one of --trace/--samples");
    }
    const auto fade = arts::fit_mle(samples);
    std::cout << "n = " << samples.size() << ", mean_v = " << fade.mean_intensity()
              << ", sigma_sq = " << fade.sigma_sq() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    return CLI::App{}.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
