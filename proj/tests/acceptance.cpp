// Acceptance suite: runs the artifact's six exit criteria at their stated
// tolerances and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "arts/baseline.hpp"
#include "arts/channel_sim.hpp"
#include "arts/fading_model.hpp"
#include "arts/grid.hpp"
#include "arts/selection.hpp"
#include "arts/trace_io.hpp"
#include "oracle.hpp"

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// 1. Bisection on 1 - 2 h2(q) = 0 must land on the 11% security threshold.
void criterion_entropy_root() {
  const double root = oracle::bisect(
      [](double q) { return 1.0 - 2.0 * arts::binary_entropy(q); }, 1e-9, 0.5 - 1e-9);
  const double err = std::abs(root - 0.1100);
  report(1, "entropy root at the 11% QBER limit", err <= 1e-4,
         "q* = " + fmt(root) + ", |q* - 0.1100| = " + fmt(err) + ", tol 1e-4");
}

// 2. Closed-form survival integrals against adaptive quadrature of the pdf.
void criterion_survival_oracle() {
  double worst = 0.0;
  for (double sigma_sq : {0.1, 0.5, 0.967, 1.0, 2.0}) {
    const arts::LognormalFade fade(1.0, sigma_sq);
    const double sigma = std::sqrt(sigma_sq);
    const double m = fade.log_location();
    for (double t : arts::logspace(0.01, 10.0, 50)) {
      const auto density = [&fade](double u) { return fade.pdf(std::exp(u)) * std::exp(u); };
      const auto weighted = [&fade](double u) {
        const double v = std::exp(u);
        return v * fade.pdf(v) * v;  // mean_intensity = 1
      };
      const double s_quad = oracle::integrate(density, std::log(t), m + 14.0 * sigma, 1e-9);
      const double w_quad =
          oracle::integrate(weighted, std::log(t), m + sigma_sq + 14.0 * sigma, 1e-9);
      worst = std::max(worst, std::abs(fade.survival_fraction(t) - s_quad));
      worst = std::max(worst, std::abs(fade.intensity_weighted_survival(t) - w_quad));
    }
  }
  report(2, "analytic survival vs quadrature oracle", worst <= 1e-6,
         "max |analytic - quadrature| = " + fmt(worst) + " over 250 thresholds x 5 widths, tol 1e-6");
}

// 3. A large simulated trace must reproduce the predicted packet/sifted
// fractions within 1% absolute and the predicted QBER within 0.002.
void criterion_monte_carlo_vs_analytic() {
  arts::ChannelSpec spec;
  spec.mean_signal_per_packet = 10.0;
  spec.background_per_packet = 2.0;
  spec.intrinsic_qber = 0.03;
  spec.fade = arts::LognormalFade(1.0, 1.0);
  const std::size_t n = 1000000;
  const auto trace = arts::generate(spec, n, 20250810);

  arts::PredictionInputs in;
  in.fade = spec.fade;
  in.background_per_packet = spec.background_per_packet;
  in.intrinsic_qber = spec.intrinsic_qber;
  in.sifted_at_zero = static_cast<double>(trace.total_sifted());
  in.packets_at_zero = static_cast<double>(n);

  std::vector<double> thresholds = {0.0};
  for (int i = 1; i <= 10; ++i)
    thresholds.push_back(spec.fade.quantile(0.05 + 0.09 * (i - 1)));  // up to p = 0.86
  std::sort(thresholds.begin(), thresholds.end());

  const auto curve = arts::empirical_curve(trace, thresholds);
  double worst_packets = 0.0, worst_sifted = 0.0, worst_qber = 0.0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double t = thresholds[i];
    const double packet_fraction =
        static_cast<double>(curve[i].selected_packets) / in.packets_at_zero;
    const double sifted_fraction =
        static_cast<double>(curve[i].sifted_total) / in.sifted_at_zero;
    worst_packets = std::max(
        worst_packets,
        std::abs(packet_fraction - arts::predict_packets(in, t) / in.packets_at_zero));
    worst_sifted = std::max(
        worst_sifted,
        std::abs(sifted_fraction - arts::predict_sifted(in, t) / in.sifted_at_zero));
    worst_qber = curve[i].qber
                     ? std::max(worst_qber, std::abs(*curve[i].qber - arts::predict_qber(in, t)))
                     : 1.0;
  }
  const bool ok = worst_packets <= 0.01 && worst_sifted <= 0.01 && worst_qber <= 0.002;
  report(3, "Monte Carlo vs analytic model at 10^6 packets", ok,
         "max |dN_P| = " + fmt(worst_packets) + ", max |dN_S| = " + fmt(worst_sifted) +
             " (tol 0.01); max |dQ| = " + fmt(worst_qber) + " (tol 0.002)");
}

// 4. High-background regime: reconstructed counts-per-packet calibration
// must reproduce the unselected QBER, and the rate curve must show the
// no-key floor at low thresholds with a positive unimodal window above it.
void criterion_high_background_regime() {
  const double n_b = 35.17, mean_q = 0.056, q0 = 0.1314;
  const double s0 = n_b * (0.5 - mean_q) / (q0 - mean_q);
  arts::PredictionInputs in;
  in.fade = arts::LognormalFade(1.0, 0.967);
  in.background_per_packet = n_b;
  in.intrinsic_qber = mean_q;
  in.sifted_at_zero = 500000.0;
  in.packets_at_zero = 500000.0 / s0;

  std::string detail;
  bool ok = true;
  auto check = [&](bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  };

  const double predicted_q0 = arts::predict_qber(in, 0.0);
  check(std::abs(predicted_q0 - q0) <= 5e-4,
        "Q_th(0) = " + fmt(predicted_q0) + " not within 5e-4 of " + fmt(q0));

  std::vector<double> grid = {0.0};
  const auto logs = arts::logspace(in.fade.quantile(0.01), in.fade.quantile(0.999), 1499);
  grid.insert(grid.end(), logs.begin(), logs.end());
  std::vector<double> rate(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rate[i] = arts::predict_rate(in, grid[i]);

  check(rate[0] == 0.0, "rate at threshold 0 should be 0, got " + fmt(rate[0]));
  std::size_t first_pos = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (rate[i] > 0.0) {
      first_pos = i;
      break;
    }
  }
  check(first_pos > 0 && first_pos < grid.size(), "no positive-rate window found");
  if (first_pos < grid.size()) {
    bool contiguous = true;
    for (std::size_t i = first_pos; i < grid.size(); ++i) contiguous &= rate[i] > 0.0;
    check(contiguous, "positive-rate window is not contiguous");

    const std::size_t argmax = static_cast<std::size_t>(
        std::max_element(rate.begin(), rate.end()) - rate.begin());
    check(argmax > first_pos && argmax < grid.size() - 1, "rate maximum is not interior");
    bool falling = true;
    for (std::size_t i = argmax; i + 1 < grid.size(); ++i)
      falling &= rate[i + 1] <= rate[i] + 1e-12;
    check(falling, "rate is not non-increasing past its maximum");
  }

  const auto best = arts::optimize_threshold(in);
  check(!best.no_key && best.rate > 0.0, "optimizer found no positive-rate threshold");
  const double q_at_best = arts::predict_qber(in, best.threshold);
  check(q_at_best < 0.11,
        "Q_th(T*) = " + fmt(q_at_best) + " is not below the 11% security threshold");

  if (ok)
    detail = "Q_th(0) = " + fmt(predicted_q0) + ", T* = " + fmt(best.threshold) +
             " (units of <V>), R(T*) = " + fmt(best.rate) + ", Q_th(T*) = " + fmt(q_at_best);
  report(4, "high-background regime: no-key floor and interior optimum", ok, detail);
}

// 5. Strategy comparison: ARTS must strictly beat the optimized
// count-threshold baseline in the low-count low-SNR region and all
// strategies must agree within 10% in the benign corner.
void criterion_strategy_crossover() {
  arts::ComparisonConfig config;
  config.mu_grid = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  config.snr_grid = {2.0, 5.0, 10.0, 20.0, 50.0};
  config.intrinsic_qber = 0.03;
  config.sigma_sq = 1.0;
  config.packets_per_point = 100000;
  config.seed = 20250810;
  const auto result = arts::compare_strategies(config);

  bool ok = true;
  std::string detail;
  double min_margin = 1.0;
  int compared = 0;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    const auto& g = result.grid[i];
    const double count_rate = result.strategies[1].rates[i];
    const double arts_rate = result.strategies[2].rates[i];
    if (g.mu <= 10.0 && g.snr <= 20.0) {
      if (count_rate == 0.0 && arts_rate == 0.0) continue;
      ++compared;
      min_margin = std::min(min_margin, arts_rate - count_rate);
      if (!(arts_rate > count_rate) && ok) {
        ok = false;
        detail = "ARTS does not beat count-threshold at mu = " + fmt(g.mu) +
                 ", SNR = " + fmt(g.snr) + " (" + fmt(arts_rate) + " vs " + fmt(count_rate) + ")";
      }
    }
  }

  double spread = 0.0;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (result.grid[i].mu == 100.0 && result.grid[i].snr == 50.0) {
      const double none = result.strategies[0].rates[i];
      const double count = result.strategies[1].rates[i];
      const double probe = result.strategies[2].rates[i];
      const double hi = std::max({none, count, probe});
      const double lo = std::min({none, count, probe});
      spread = (hi - lo) / hi;
      if (spread > 0.10 && ok) {
        ok = false;
        detail = "strategies spread " + fmt(spread) + " > 10% at mu = 100, SNR = 50";
      }
    }
  }

  if (ok)
    detail = "ARTS > count-threshold at all " + std::to_string(compared) +
             " comparable low-(mu,SNR) points, min margin = " + fmt(min_margin) +
             "; spread at (100, 50) = " + fmt(spread) + " (tol 0.10)";
  report(5, "strategy comparison crossover at 10^5 packets/point", ok, detail);
}

// 6. Property suite: monotonicity, dominance, MLE round trip, determinism
// and format round trips.
void criterion_property_suite() {
  bool ok = true;
  std::string detail;
  auto check = [&](bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  };

  // subset monotonicity of selection
  arts::ChannelSpec spec;
  spec.mean_signal_per_packet = 5.0;
  spec.background_per_packet = 1.0;
  spec.intrinsic_qber = 0.03;
  spec.fade = arts::LognormalFade(1.0, 1.0);
  const auto trace = arts::generate(spec, 100000, 61803);
  const auto thresholds = arts::linspace(0.0, spec.fade.quantile(0.99), 50);
  const auto curve = arts::empirical_curve(trace, thresholds);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    check(curve[i].selected_packets <= curve[i - 1].selected_packets &&
              curve[i].sifted_total <= curve[i - 1].sifted_total &&
              curve[i].error_total <= curve[i - 1].error_total,
          "selection statistics are not non-increasing in the threshold");
  }

  // dominance of optimized strategies over no selection
  for (std::uint64_t seed : {1001u, 1002u, 1003u}) {
    const auto t = arts::generate(spec, 20000, seed);
    const double none = arts::select(t, 0.0).rate;
    check(arts::optimize_empirical_threshold(t).rate >= none,
          "optimized ARTS fell below the no-selection rate");
    check(arts::optimize_count_threshold(t).rate >= none,
          "optimized count threshold fell below the no-selection rate");
  }

  // MLE round trip at 1e5 samples
  const arts::LognormalFade truth(1.0, 0.967);
  const auto fit = arts::fit_mle(truth.sample(271828, 100000));
  check(std::abs(fit.sigma_sq() - 0.967) / 0.967 <= 0.02 &&
            std::abs(fit.mean_intensity() - 1.0) <= 0.02,
        "MLE round trip exceeded 2% (sigma_sq = " + fmt(fit.sigma_sq()) +
            ", mean = " + fmt(fit.mean_intensity()) + ")");

  // seed determinism: byte-identical trace and comparison outputs
  {
    arts::TraceFileHeader header;
    header.source = arts::TraceSource::simulated;
    header.channel = spec;
    header.seed = 99;
    std::ostringstream a, b;
    arts::write_trace(a, arts::generate(spec, 20000, 99), header);
    arts::write_trace(b, arts::generate(spec, 20000, 99), header);
    check(a.str() == b.str(), "regenerated trace files differ byte-for-byte");

    arts::ComparisonConfig config;
    config.mu_grid = {2.0, 20.0};
    config.snr_grid = {3.0, 30.0};
    config.packets_per_point = 10000;
    config.seed = 555;
    const auto x = arts::to_json(arts::compare_strategies(config)).dump(2);
    const auto y = arts::to_json(arts::compare_strategies(config)).dump(2);
    check(x == y, "regenerated comparison documents differ byte-for-byte");
  }

  // format round trips
  {
    arts::TraceFileHeader header;
    header.source = arts::TraceSource::simulated;
    header.channel = spec;
    header.seed = 7;
    const auto t = arts::generate(spec, 20000, 7);
    std::ostringstream out;
    arts::write_trace(out, t, header);
    std::istringstream in(out.str());
    const auto loaded = arts::read_trace(in, "acceptance.csv");
    bool equal = loaded.trace.packets.size() == t.packets.size();
    for (std::size_t i = 0; equal && i < t.packets.size(); ++i)
      equal = loaded.trace.packets[i].index == t.packets[i].index &&
              loaded.trace.packets[i].probe_voltage == t.packets[i].probe_voltage &&
              loaded.trace.packets[i].sifted_count == t.packets[i].sifted_count &&
              loaded.trace.packets[i].error_count == t.packets[i].error_count;
    check(equal, "trace CSV round trip is not the identity");

    const auto sweep = arts::selection_sweep_json(curve, "acceptance.csv");
    std::ostringstream jout;
    arts::write_results(jout, sweep);
    std::istringstream jin(jout.str());
    check(arts::read_results(jin, "acceptance.json") == sweep,
          "results JSON round trip is not the identity");
  }

  if (ok)
    detail = "monotonicity, dominance, MLE round trip, seed determinism and format "
             "round trips all hold";
  report(6, "property suite", ok, detail);
}

}  // namespace

int main() {
  criterion_entropy_root();
  criterion_survival_oracle();
  criterion_monte_carlo_vs_analytic();
  criterion_high_background_regime();
  criterion_strategy_crossover();
  criterion_property_suite();
  if (g_failures == 0)
    std::printf("all 6 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
