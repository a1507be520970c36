#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arts {

inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw std::invalid_argument("linspace: count must be >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

inline std::vector<double> logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0))
    throw std::invalid_argument("logspace: endpoints must be positive");
  auto out = linspace(std::log(start), std::log(stop), count);
  for (auto& x : out) x = std::exp(x);
  if (count >= 1) {
    out.front() = start;
    out.back() = stop;
  }
  return out;
}

}  // namespace arts
