#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bell/identities.hpp"

namespace bell {

// Interval of values a dependent correlation may take. Infeasibility is an
// explicit state, not a lower > upper encoding.
struct FeasibleInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = true;

  static FeasibleInterval infeasible() { return {0.0, 0.0, false}; }
};

// Given <ab> and <ab'>, the set of <bb'> values achievable by some matched
// triple (in the large-N limit) is exactly [|c1 + c2| - 1, 1 - |c1 - c2|].
inline FeasibleInterval third_correlation_bounds(double c_ab, double c_ab2) {
  detail::require_correlation_value(c_ab, "third_correlation_bounds");
  detail::require_correlation_value(c_ab2, "third_correlation_bounds");
  return {std::abs(c_ab + c_ab2) - 1.0, 1.0 - std::abs(c_ab - c_ab2), true};
}

// Given <ab>, <ab'>, <a'b>, the interval of <a'b'> values consistent with all
// sign variants of the four-term condition, intersected with [-1, 1]. Any
// triple of values in the cube admits some completion, so an infeasible
// result only arises from numerically degenerate input.
inline FeasibleInterval fourth_correlation_bounds(double c_ab, double c_ab2, double c_a2b) {
  detail::require_correlation_value(c_ab, "fourth_correlation_bounds");
  detail::require_correlation_value(c_ab2, "fourth_correlation_bounds");
  detail::require_correlation_value(c_a2b, "fourth_correlation_bounds");
  const double p = c_ab, q = c_ab2, r = c_a2b;

  // |p + q + r - z| <= 2, |p + q - r + z| <= 2, |p - q + r + z| <= 2,
  // |-p + q + r + z| <= 2, z in [-1, 1].
  double lo = -1.0, hi = 1.0;
  lo = std::max(lo, p + q + r - 2.0);
  hi = std::min(hi, p + q + r + 2.0);
  lo = std::max(lo, -2.0 - p - q + r);
  hi = std::min(hi, 2.0 - p - q + r);
  lo = std::max(lo, -2.0 - p + q - r);
  hi = std::min(hi, 2.0 - p + q - r);
  lo = std::max(lo, -2.0 + p - q - r);
  hi = std::min(hi, 2.0 + p - q - r);

  if (lo > hi) return FeasibleInterval::infeasible();
  return {lo, hi, true};
}

}  // namespace bell
