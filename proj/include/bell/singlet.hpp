#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bell/rng.hpp"

namespace bell {

// One trial of the two-sided spin measurement on the singlet state. Marginals
// are fair coins; the joint law P(s, t) = (1 - s t cos(b - a)) / 4 gives the
// product expectation -cos(b - a).
inline std::pair<int, int> sample_singlet_pair(double a, double b, TrialRng& rng) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("sample_singlet_pair: non-finite setting angle");
  const int s = rng.next_sign();
  // P(t = -s | s) = (1 + cos(b - a)) / 2.
  const double p_opposite = 0.5 * (1.0 + std::cos(b - a));
  const int t = rng.next_double() < p_opposite ? -s : s;
  return {s, t};
}

}  // namespace bell
