#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "arts/fading_model.hpp"
#include "arts/trace.hpp"

namespace arts {

// Statistics of one post-selection pass over a trace. `rate` is the
// asymptotic BB84 secret fraction, normalized to the trace's total sifted
// count, and is clamped at zero.
struct SelectionOutcome {
  double threshold = 0.0;
  std::uint64_t selected_packets = 0;  // N_P
  std::uint64_t sifted_total = 0;      // N_S
  std::uint64_t error_total = 0;       // E
  double counts_per_packet = 0.0;      // s = N_S/N_P; 0 when nothing selected
  std::optional<double> qber;          // E/N_S; empty (not 0) when N_S = 0
  double rate = 0.0;
};

// h2(q) = -q log2 q - (1-q) log2(1-q), with h2(0) = h2(1) = 0.
double binary_entropy(double q);

// Asymptotic BB84 secret fraction: max(0, sifted_fraction * (1 - 2 h2(qber))).
// The fraction is relative to the unselected sifted total, so the result is
// per sifted bit of the raw acquisition.
double key_rate(double sifted_fraction, double qber);

// Rate of a selection from its raw sums, normalized to the trace's
// unselected sifted total. Unlike key_rate this accepts any empirical QBER
// in [0, 1]; negative brackets clamp to 0, and an empty selection rates 0.
double rate_from_counts(std::uint64_t sifted_selected, std::uint64_t errors_selected,
                        std::uint64_t sifted_reference);

// Post-select packets with probe_voltage strictly above `threshold` and
// accumulate their statistics. An empty selection is a valid outcome (rate 0,
// qber unset), not an error.
SelectionOutcome select(const Trace& trace, double threshold);

// One select() per threshold. Thresholds must be sorted ascending. The
// parallel version distributes thresholds across OpenMP threads and returns
// bit-identical results to the serial reference.
std::vector<SelectionOutcome> empirical_curve(const Trace& trace,
                                              std::span<const double> thresholds);
std::vector<SelectionOutcome> empirical_curve_serial(const Trace& trace,
                                                     std::span<const double> thresholds);

struct EmpiricalOptimum {
  double threshold = 0.0;
  double rate = 0.0;
};

// Best achievable rate over every probe threshold of the trace. Candidates
// are 0 and each distinct probe value; ties resolve to the smallest
// threshold (keep the most packets).
EmpiricalOptimum optimize_empirical_threshold(const Trace& trace);

// Calibration for the analytic predictors: the fitted fade, the background
// level N_b, the intrinsic channel QBER <Q>, and the measured unselected
// totals N_S(0), N_P(0).
struct PredictionInputs {
  LognormalFade fade{1.0, 1.0};
  double background_per_packet = 0.0;
  double intrinsic_qber = 0.0;
  double sifted_at_zero = 0.0;
  double packets_at_zero = 0.0;

  void validate() const;
};

// N_P(T) = N_P(0) * P(V > T).
double predict_packets(const PredictionInputs& in, double threshold);

// N_S(T) = N_b N_P(T) + [N_S(0) - N_b N_P(0)] * intensity-weighted survival.
// Throws CalibrationError when N_S(0) < N_b N_P(0). Returns exactly N_S(0)
// at threshold 0.
double predict_sifted(const PredictionInputs& in, double threshold);

// s(T) = N_S(T) / N_P(T). Throws ModelError when no packets survive.
double predict_counts_per_packet(const PredictionInputs& in, double threshold);

// Q_th(T) = <Q> (1 - N_b/s(T)) + (1/2) N_b/s(T), in [<Q>, 1/2]. Throws
// ModelError when s(T) < N_b.
double predict_qber(const PredictionInputs& in, double threshold);

// R_th(T) = key_rate(N_S(T)/N_S(0), Q_th(T)); 0 when nothing survives.
double predict_rate(const PredictionInputs& in, double threshold);

struct PredictionCurve {
  PredictionInputs inputs;
  std::vector<double> thresholds;  // strictly increasing
  std::vector<double> packets;
  std::vector<double> sifted;
  std::vector<double> counts_per_packet;
  std::vector<double> qber;
  std::vector<double> rate;
};

PredictionCurve prediction_curve(const PredictionInputs& in,
                                 std::span<const double> thresholds);

struct ThresholdSearch {
  double t_max = 0.0;              // 0 selects the fade's 99.9th percentile
  std::size_t grid_points = 1500;  // dense scan size, must be >= 1000
};

struct OptimalThreshold {
  double threshold = 0.0;
  double rate = 0.0;
  bool no_key = false;  // no threshold achieves a positive rate
};

// Global maximizer of predict_rate over [0, t_max]: dense log-spaced grid
// scan above the fade's 1st percentile followed by golden-section refinement
// around the best grid point. Unimodality is not assumed.
OptimalThreshold optimize_threshold(const PredictionInputs& in,
                                    const ThresholdSearch& search = {});

struct GridMaximum {
  double x = 0.0;
  double value = 0.0;
};

// Grid scan plus golden-section refinement between the neighbors of the best
// grid point. The refined point is used only if it beats the grid maximum,
// so a boundary maximum is returned exactly.
GridMaximum maximize_on_grid(const std::function<double(double)>& f,
                             std::span<const double> grid);

}  // namespace arts
