#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bell/binary_stream.hpp"

namespace bell {

// A correlation kept as an exact integer numerator over the sample count.
// Floating point appears only in derived views (value, stderr), never in the
// accumulator, so identity comparisons can be done exactly.
struct CorrelationEstimate {
  std::int64_t sum = 0;  // Σ x_i y_i, always in [-n, n] with the parity of n
  std::int64_t n = 0;

  double value() const noexcept { return static_cast<double>(sum) / static_cast<double>(n); }

  double stderr_value() const noexcept {
    const double v = value();
    return std::sqrt((1.0 - v * v) / static_cast<double>(n));
  }
};

inline CorrelationEstimate correlate(const BinaryStream& x, const BinaryStream& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("correlate: stream lengths differ");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return {sum, static_cast<std::int64_t>(x.size())};
}

}  // namespace bell
