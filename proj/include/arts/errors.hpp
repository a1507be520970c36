#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arts {

// Measured calibration inputs contradict each other, e.g. the total sifted
// count is below the background floor N_b * N_P(0).
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The analytic model was driven into a regime it does not cover, e.g. a
// predicted counts-per-packet below the background level.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structured error for file parsing. `row` is 1-based and counts physical
// lines of the input, so it can be quoted back to the user directly.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t row, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(row) + ": " + what),
        row_(row) {}

  explicit ParseError(const std::string& source, const std::string& what)
      : std::runtime_error(source + ": " + what), row_(0) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arts
