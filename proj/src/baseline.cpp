#include "arts/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arts/rng.hpp"

namespace arts {

SelectionOutcome select_by_counts(const Trace& trace, std::uint64_t count_threshold) {
  trace.validate();
  SelectionOutcome out;
  out.threshold = static_cast<double>(count_threshold);
  for (const auto& p : trace.packets) {
    if (p.sifted_count > count_threshold) {
      ++out.selected_packets;
      out.sifted_total += p.sifted_count;
      out.error_total += p.error_count;
    }
  }
  if (out.selected_packets > 0)
    out.counts_per_packet = static_cast<double>(out.sifted_total) /
                            static_cast<double>(out.selected_packets);
  if (out.sifted_total > 0)
    out.qber = static_cast<double>(out.error_total) /
               static_cast<double>(out.sifted_total);
  out.rate = rate_from_counts(out.sifted_total, out.error_total, trace.total_sifted());
  return out;
}

CountOptimum optimize_count_threshold(const Trace& trace) {
  trace.validate();
  const std::uint64_t reference = trace.total_sifted();
  std::uint64_t max_count = 0;
  for (const auto& p : trace.packets) max_count = std::max(max_count, p.sifted_count);

  // Bucket packets by sifted count; the selection {S_i > k} is then the
  // suffix of buckets above k.
  std::vector<std::uint64_t> bucket_sifted(max_count + 1, 0), bucket_errors(max_count + 1, 0);
  for (const auto& p : trace.packets) {
    bucket_sifted[p.sifted_count] += p.sifted_count;
    bucket_errors[p.sifted_count] += p.error_count;
  }

  std::uint64_t sifted = 0, errors = 0;
  std::vector<std::uint64_t> suffix_sifted(max_count + 2, 0), suffix_errors(max_count + 2, 0);
  for (std::uint64_t v = max_count + 1; v-- > 0;) {
    sifted += bucket_sifted[v];
    errors += bucket_errors[v];
    suffix_sifted[v] = sifted;
    suffix_errors[v] = errors;
  }

  CountOptimum best{0, rate_from_counts(suffix_sifted[1], suffix_errors[1], reference)};
  for (std::uint64_t k = 1; k <= max_count; ++k) {
    const double rate = rate_from_counts(suffix_sifted[k + 1], suffix_errors[k + 1], reference);
    if (rate > best.rate) best = {k, rate};
  }
  return best;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::none: return "none";
    case Strategy::count_threshold: return "count_threshold";
    case Strategy::arts: return "arts";
  }
  return "unknown";
}

void ComparisonConfig::validate() const {
  if (mu_grid.empty() || snr_grid.empty())
    throw std::invalid_argument("ComparisonConfig: mu and snr grids must be non-empty");
  for (double mu : mu_grid)
    if (!(mu > 0.0)) throw std::domain_error("ComparisonConfig: mu values must be positive");
  for (double snr : snr_grid)
    if (!(snr > 1.0)) throw std::domain_error("ComparisonConfig: snr values must exceed 1");
  if (!(intrinsic_qber >= 0.0 && intrinsic_qber <= 0.5))
    throw std::domain_error("ComparisonConfig: intrinsic_qber must lie in [0, 0.5]");
  if (!(sigma_sq > 0.0))
    throw std::domain_error("ComparisonConfig: sigma_sq must be positive");
  if (packets_per_point < 10000)
    throw std::invalid_argument("ComparisonConfig: need at least 10^4 packets per point");
}

ComparisonResult compare_strategies(const ComparisonConfig& config) {
  config.validate();

  ComparisonResult result;
  result.config = config;
  result.strategies = {StrategyResult{Strategy::none, {}, {}},
                       StrategyResult{Strategy::count_threshold, {}, {}},
                       StrategyResult{Strategy::arts, {}, {}}};

  std::uint64_t point_index = 0;
  for (double mu : config.mu_grid) {
    for (double snr : config.snr_grid) {
      const double n_b = background_from_snr(mu, snr);
      ChannelSpec spec;
      spec.mean_signal_per_packet = mu;
      spec.background_per_packet = n_b;
      spec.intrinsic_qber = config.intrinsic_qber;
      spec.fade = LognormalFade(1.0, config.sigma_sq);

      // Per-point seed derived from (seed, point index): results do not
      // depend on grid evaluation order.
      std::uint64_t mix_state = config.seed + 0x9E3779B97F4A7C15ull * (point_index + 1);
      const std::uint64_t point_seed = rng::splitmix64(mix_state);
      const Trace trace = generate(spec, config.packets_per_point, point_seed);

      const SelectionOutcome unselected = select(trace, 0.0);
      const CountOptimum count_best = optimize_count_threshold(trace);
      const EmpiricalOptimum arts_best = optimize_empirical_threshold(trace);

      result.grid.push_back({mu, snr, n_b});
      result.strategies[0].rates.push_back(unselected.rate);
      result.strategies[1].rates.push_back(count_best.rate);
      result.strategies[1].optimal_thresholds.push_back(static_cast<double>(count_best.threshold));
      result.strategies[2].rates.push_back(arts_best.rate);
      result.strategies[2].optimal_thresholds.push_back(arts_best.threshold);
      ++point_index;
    }
  }
  return result;
}

}  // namespace arts
