#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "arts/channel_sim.hpp"
#include "arts/selection.hpp"
#include "arts/trace.hpp"

namespace arts {

// Post-select packets whose sifted count is strictly above the integer
// threshold (selection on the counts themselves, no probe needed).
SelectionOutcome select_by_counts(const Trace& trace, std::uint64_t count_threshold);

struct CountOptimum {
  std::uint64_t threshold = 0;
  double rate = 0.0;
};

// Exhaustive scan over integer thresholds 0..max(S_i); returns the
// rate-maximizing one, ties resolved to the smallest threshold. The scan
// sees the true error counts, so this is the count-threshold strategy at its
// best.
CountOptimum optimize_count_threshold(const Trace& trace);

enum class Strategy { none, count_threshold, arts };
std::string_view to_string(Strategy s);

struct ComparisonGridPoint {
  double mu = 0.0;
  double snr = 0.0;
  double background_per_packet = 0.0;
};

struct StrategyResult {
  Strategy name = Strategy::none;
  std::vector<double> rates;               // one per grid point
  std::vector<double> optimal_thresholds;  // empty for Strategy::none
};

struct ComparisonConfig {
  std::vector<double> mu_grid;
  std::vector<double> snr_grid;
  double intrinsic_qber = 0.03;
  double sigma_sq = 1.0;
  std::size_t packets_per_point = 100000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ComparisonResult {
  ComparisonConfig config;
  std::vector<ComparisonGridPoint> grid;  // row-major over mu x snr
  std::vector<StrategyResult> strategies; // none, count_threshold, arts
};

// For every (mu, snr) grid point: simulate one trace with a per-point
// derived seed, then record the no-selection rate, the optimized
// count-threshold rate and the optimized probe-threshold (ARTS) rate on that
// same trace. Bit-reproducible for a fixed config.
ComparisonResult compare_strategies(const ComparisonConfig& config);

}  // namespace arts
