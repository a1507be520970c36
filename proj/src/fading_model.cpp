#include "arts/fading_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "arts/math.hpp"
#include "arts/rng.hpp"

namespace arts {

LognormalFade::LognormalFade(double mean_intensity, double sigma_sq)
    : mean_(mean_intensity), sigma_sq_(sigma_sq) {
  if (!(mean_intensity > 0.0) || !std::isfinite(mean_intensity))
    throw std::domain_error("LognormalFade: mean_intensity must be positive");
  if (!(sigma_sq >= 0.0) || !std::isfinite(sigma_sq))
    throw std::domain_error("LognormalFade: sigma_sq must be non-negative");
}

double LognormalFade::log_location() const noexcept {
  return std::log(mean_) - 0.5 * sigma_sq_;
}

double LognormalFade::pdf(double v) const {
  if (sigma_sq_ == 0.0)
    throw std::domain_error("LognormalFade::pdf: degenerate distribution (sigma_sq = 0) has no density");
  if (!(v > 0.0))
    throw std::domain_error("LognormalFade::pdf: v must be positive");
  const double sigma = std::sqrt(sigma_sq_);
  const double z = std::log(v / mean_) + 0.5 * sigma_sq_;
  const double inv_sqrt_two_pi = 0.39894228040143267794;
  return inv_sqrt_two_pi / (sigma * v) * std::exp(-z * z / (2.0 * sigma_sq_));
}

double LognormalFade::survival_fraction(double threshold) const {
  if (!(threshold >= 0.0))
    throw std::domain_error("LognormalFade::survival_fraction: threshold must be non-negative");
  if (threshold == 0.0) return 1.0;
  if (sigma_sq_ == 0.0) return threshold < mean_ ? 1.0 : 0.0;
  const double arg = (std::log(threshold / mean_) + 0.5 * sigma_sq_) / std::sqrt(2.0 * sigma_sq_);
  return 0.5 * math::erfc(arg);
}

double LognormalFade::intensity_weighted_survival(double threshold) const {
  if (!(threshold >= 0.0))
    throw std::domain_error("LognormalFade::intensity_weighted_survival: threshold must be non-negative");
  if (threshold == 0.0) return 1.0;
  if (sigma_sq_ == 0.0) return threshold < mean_ ? 1.0 : 0.0;
  const double arg = (std::log(threshold / mean_) - 0.5 * sigma_sq_) / std::sqrt(2.0 * sigma_sq_);
  return 0.5 * math::erfc(arg);
}

double LognormalFade::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("LognormalFade::quantile: p must lie in (0, 1)");
  if (sigma_sq_ == 0.0) return mean_;
  return std::exp(log_location() + std::sqrt(sigma_sq_) * math::inv_normal_cdf(p));
}

std::vector<double> LognormalFade::sample(std::uint64_t seed, std::size_t n) const {
  if (n == 0) throw std::invalid_argument("LognormalFade::sample: n must be >= 1");
  const double m = log_location();
  const double sigma = std::sqrt(sigma_sq_);
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    auto gen = rng::Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = std::exp(m + sigma * gen.normal());
  }
  return out;
}

double sigma_sq_from_moments(double mean, double variance) {
  if (!(mean > 0.0))
    throw std::domain_error("sigma_sq_from_moments: mean must be positive");
  if (!(variance >= 0.0))
    throw std::domain_error("sigma_sq_from_moments: variance must be non-negative");
  return std::log1p(variance / (mean * mean));
}

LognormalFade fit_mle(std::span<const double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("fit_mle: need at least 2 samples");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i] > 0.0))
      throw std::domain_error("fit_mle: sample " + std::to_string(i) + " is not positive");
    sum += std::log(samples[i]);
  }
  const double n = static_cast<double>(samples.size());
  const double mean_log = sum / n;
  double ss = 0.0;
  for (double v : samples) {
    const double d = std::log(v) - mean_log;
    ss += d * d;
  }
  const double sigma_sq = ss / n;  // population variance: exact MLE
  return LognormalFade(std::exp(mean_log + 0.5 * sigma_sq), sigma_sq);
}

}  // namespace arts
