#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arts {

// Log-normal fading channel. Parameterized by the linear-scale mean <V> and
// the log-variance sigma^2 = ln(1 + Var{V}/<V>^2); the log-location is
// ln<V> - sigma^2/2 so the first moment equals mean_intensity exactly.
//
// sigma_sq == 0 is admitted as the degenerate constant channel: survival
// functions become step functions and sampling returns the mean, but pdf()
// rejects it (no density exists).
class LognormalFade {
 public:
  LognormalFade(double mean_intensity, double sigma_sq);

  double mean_intensity() const noexcept { return mean_; }
  double sigma_sq() const noexcept { return sigma_sq_; }

  // ln<V> - sigma^2/2
  double log_location() const noexcept;

  // Density at v > 0. Requires sigma_sq > 0.
  double pdf(double v) const;

  // P(V > threshold). threshold == 0 returns exactly 1.
  double survival_fraction(double threshold) const;

  // Fraction of the total transmitted intensity carried by fades above the
  // threshold: integral of (v/<V>) pdf(v) over (threshold, inf).
  double intensity_weighted_survival(double threshold) const;

  // Inverse CDF, p in (0, 1).
  double quantile(double p) const;

  // n i.i.d. draws. Deterministic for a fixed seed; draw i comes from its own
  // derived stream, so sample(seed, n) is a prefix of sample(seed, m) for
  // m > n and callers may partition work by index.
  std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

 private:
  double mean_;
  double sigma_sq_;
};

// sigma^2 = ln(1 + variance/mean^2) from linear-scale moments.
double sigma_sq_from_moments(double mean, double variance);

// Maximum likelihood fit: sigma_sq is the population (1/n) variance of the
// log-samples, mean_intensity = exp(mean(ln samples) + sigma_sq/2).
LognormalFade fit_mle(std::span<const double> samples);

}  // namespace arts
