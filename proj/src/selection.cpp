#include "arts/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "arts/errors.hpp"
#include "arts/grid.hpp"

namespace arts {
namespace {

SelectionOutcome select_with_reference(const Trace& trace, double threshold,
                                       std::uint64_t sifted_reference) {
  SelectionOutcome out;
  out.threshold = threshold;
  for (const auto& p : trace.packets) {
    if (p.probe_voltage > threshold) {
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
  out.rate = rate_from_counts(out.sifted_total, out.error_total, sifted_reference);
  return out;
}

void require_threshold(double threshold) {
  if (!(threshold >= 0.0))
    throw std::domain_error("select: threshold must be non-negative");
}

void require_sorted(std::span<const double> thresholds) {
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
    if (thresholds[i] > thresholds[i + 1])
      throw std::invalid_argument("thresholds must be sorted ascending");
}

}  // namespace

double rate_from_counts(std::uint64_t sifted_selected, std::uint64_t errors_selected,
                        std::uint64_t sifted_reference) {
  if (sifted_selected == 0 || sifted_reference == 0) return 0.0;
  const double q =
      static_cast<double>(errors_selected) / static_cast<double>(sifted_selected);
  const double fraction =
      static_cast<double>(sifted_selected) / static_cast<double>(sifted_reference);
  return std::max(0.0, fraction * (1.0 - 2.0 * binary_entropy(q)));
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("binary_entropy: q must lie in [0, 1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double key_rate(double sifted_fraction, double qber) {
  if (!(sifted_fraction >= 0.0 && sifted_fraction <= 1.0))
    throw std::domain_error("key_rate: sifted_fraction must lie in [0, 1]");
  if (!(qber >= 0.0 && qber <= 0.5))
    throw std::domain_error("key_rate: qber must lie in [0, 0.5]");
  return std::max(0.0, sifted_fraction * (1.0 - 2.0 * binary_entropy(qber)));
}

SelectionOutcome select(const Trace& trace, double threshold) {
  trace.validate();
  require_threshold(threshold);
  return select_with_reference(trace, threshold, trace.total_sifted());
}

std::vector<SelectionOutcome> empirical_curve(const Trace& trace,
                                              std::span<const double> thresholds) {
  trace.validate();
  require_sorted(thresholds);
  if (!thresholds.empty()) require_threshold(thresholds.front());
  const std::uint64_t reference = trace.total_sifted();
  std::vector<SelectionOutcome> out(thresholds.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(thresholds.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        select_with_reference(trace, thresholds[static_cast<std::size_t>(i)], reference);
  return out;
}

std::vector<SelectionOutcome> empirical_curve_serial(
    const Trace& trace, std::span<const double> thresholds) {
  trace.validate();
  require_sorted(thresholds);
  if (!thresholds.empty()) require_threshold(thresholds.front());
  const std::uint64_t reference = trace.total_sifted();
  std::vector<SelectionOutcome> out(thresholds.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    out[i] = select_with_reference(trace, thresholds[i], reference);
  return out;
}

EmpiricalOptimum optimize_empirical_threshold(const Trace& trace) {
  trace.validate();
  const std::uint64_t reference = trace.total_sifted();

  // Sort packets by probe value; the selection at any threshold is then a
  // suffix, and suffix sums give every candidate in one pass.
  struct Entry {
    double v;
    std::uint64_t s, e;
  };
  std::vector<Entry> entries;
  entries.reserve(trace.packets.size());
  for (const auto& p : trace.packets)
    entries.push_back({p.probe_voltage, p.sifted_count, p.error_count});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.v < b.v; });

  const std::size_t n = entries.size();
  std::vector<std::uint64_t> suffix_s(n + 1, 0), suffix_e(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_s[i] = suffix_s[i + 1] + entries[i].s;
    suffix_e[i] = suffix_e[i + 1] + entries[i].e;
  }

  EmpiricalOptimum best{0.0, 0.0};
  {
    // Threshold 0: packets with V > 0.
    const std::size_t first = static_cast<std::size_t>(
        std::upper_bound(entries.begin(), entries.end(), 0.0,
                         [](double t, const Entry& e) { return t < e.v; }) -
        entries.begin());
    best.rate = rate_from_counts(suffix_s[first], suffix_e[first], reference);
  }
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && entries[j].v == entries[i].v) ++j;
    // Candidate threshold equal to this probe value selects the strict suffix.
    const double rate = rate_from_counts(suffix_s[j], suffix_e[j], reference);
    if (rate > best.rate) best = {entries[i].v, rate};
    i = j;
  }
  return best;
}

void PredictionInputs::validate() const {
  if (!(fade.sigma_sq() > 0.0))
    throw std::domain_error("PredictionInputs: fade.sigma_sq must be positive");
  if (!(background_per_packet >= 0.0))
    throw std::domain_error("PredictionInputs: background_per_packet must be non-negative");
  if (!(intrinsic_qber >= 0.0 && intrinsic_qber <= 0.5))
    throw std::domain_error("PredictionInputs: intrinsic_qber must lie in [0, 0.5]");
  if (!(sifted_at_zero >= 0.0))
    throw std::domain_error("PredictionInputs: sifted_at_zero must be non-negative");
  if (!(packets_at_zero > 0.0))
    throw std::domain_error("PredictionInputs: packets_at_zero must be positive");
}

double predict_packets(const PredictionInputs& in, double threshold) {
  in.validate();
  return in.packets_at_zero * in.fade.survival_fraction(threshold);
}

double predict_sifted(const PredictionInputs& in, double threshold) {
  in.validate();
  const double background_floor = in.background_per_packet * in.packets_at_zero;
  if (in.sifted_at_zero < background_floor)
    throw CalibrationError("predict_sifted: N_S(0) is below the background floor N_b*N_P(0)");
  if (threshold == 0.0) return in.sifted_at_zero;
  return in.background_per_packet * in.packets_at_zero * in.fade.survival_fraction(threshold) +
         (in.sifted_at_zero - background_floor) *
             in.fade.intensity_weighted_survival(threshold);
}

double predict_counts_per_packet(const PredictionInputs& in, double threshold) {
  const double sifted = predict_sifted(in, threshold);
  const double packets = predict_packets(in, threshold);
  if (!(packets > 0.0))
    throw ModelError("predict_counts_per_packet: no packets predicted above threshold");
  return sifted / packets;
}

double predict_qber(const PredictionInputs& in, double threshold) {
  const double s = predict_counts_per_packet(in, threshold);
  if (in.background_per_packet == 0.0) return in.intrinsic_qber;
  // s(T) >= N_b holds for any consistent calibration; allow rounding noise
  // of the all-background case (s == N_b) without tripping the guard.
  if (s < in.background_per_packet * (1.0 - 1e-9))
    throw ModelError("predict_qber: predicted counts per packet fall below the background level");
  const double background_share = std::min(1.0, in.background_per_packet / s);
  return in.intrinsic_qber * (1.0 - background_share) + 0.5 * background_share;
}

double predict_rate(const PredictionInputs& in, double threshold) {
  const double sifted = predict_sifted(in, threshold);
  if (!(in.sifted_at_zero > 0.0) || sifted <= 0.0) return 0.0;
  const double qber = predict_qber(in, threshold);
  const double fraction = std::min(1.0, sifted / in.sifted_at_zero);
  return key_rate(fraction, qber);
}

PredictionCurve prediction_curve(const PredictionInputs& in,
                                 std::span<const double> thresholds) {
  in.validate();
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
    if (!(thresholds[i] < thresholds[i + 1]))
      throw std::invalid_argument("prediction_curve: thresholds must be strictly increasing");
  PredictionCurve curve;
  curve.inputs = in;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  const std::size_t n = thresholds.size();
  curve.packets.resize(n);
  curve.sifted.resize(n);
  curve.counts_per_packet.resize(n);
  curve.qber.resize(n);
  curve.rate.resize(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n); ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    const double t = thresholds[i];
    curve.packets[i] = predict_packets(in, t);
    curve.sifted[i] = predict_sifted(in, t);
    curve.counts_per_packet[i] = predict_counts_per_packet(in, t);
    curve.qber[i] = predict_qber(in, t);
    curve.rate[i] = predict_rate(in, t);
  }
  return curve;
}

GridMaximum maximize_on_grid(const std::function<double(double)>& f,
                             std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("maximize_on_grid: empty grid");
  std::size_t best_i = 0;
  double best_v = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }

  const double lo = grid[best_i == 0 ? 0 : best_i - 1];
  const double hi = grid[std::min(best_i + 1, grid.size() - 1)];
  GridMaximum best{grid[best_i], best_v};
  if (hi > lo) {
    const double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 120 && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b));
         ++iter) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    const double xm = 0.5 * (a + b);
    const double vm = f(xm);
    if (vm > best.value) best = {xm, vm};
  }
  return best;
}

OptimalThreshold optimize_threshold(const PredictionInputs& in,
                                    const ThresholdSearch& search) {
  in.validate();
  if (search.grid_points < 1000)
    throw std::invalid_argument("optimize_threshold: grid must have at least 1000 points");
  const double p999 = in.fade.quantile(0.999);
  const double t_max = search.t_max == 0.0 ? p999 : search.t_max;
  if (t_max < p999)
    throw std::invalid_argument(
        "optimize_threshold: search range must cover the fade's 99.9th percentile");

  std::vector<double> grid;
  grid.reserve(search.grid_points);
  grid.push_back(0.0);
  const auto logs = logspace(in.fade.quantile(0.01), t_max, search.grid_points - 1);
  grid.insert(grid.end(), logs.begin(), logs.end());

  const auto rate_at = [&in](double t) { return predict_rate(in, t); };
  const GridMaximum best = maximize_on_grid(rate_at, grid);
  if (best.value <= 0.0) return {0.0, 0.0, true};
  return {best.x, best.value, false};
}

}  // namespace arts
