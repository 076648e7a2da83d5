#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bell/binary_stream.hpp"
#include "bell/rng.hpp"

namespace bell {

// Random rectangular ±1 wave: a fair initial sign that flips at Poisson event
// points. Stationary, with correlation exp(-2 * rate * |Δx|) between any two
// positions.
struct TelegraphProcess {
  double switching_rate;

  explicit TelegraphProcess(double rate) : switching_rate(rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("TelegraphProcess: rate must be > 0");
  }
};

// Samples each realization at every requested position; stream k holds the
// values at positions[k] across realizations, so the result is matched by
// construction.
inline MatchedStreamSet sample_telegraph(const TelegraphProcess& process,
                                         const std::vector<double>& positions, std::size_t n,
                                         std::uint64_t seed) {
  if (positions.empty()) throw std::invalid_argument("sample_telegraph: no positions");
  for (std::size_t k = 0; k + 1 < positions.size(); ++k)
    if (!(positions[k] < positions[k + 1]))
      throw std::invalid_argument("sample_telegraph: positions must be strictly increasing");
  if (n < 1) throw std::invalid_argument("sample_telegraph: n must be >= 1");

  std::vector<std::vector<int>> columns(positions.size(), std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    TrialRng rng(seed, i);
    int value = rng.next_sign();
    columns[0][i] = value;
    for (std::size_t k = 1; k < positions.size(); ++k) {
      const double gap = positions[k] - positions[k - 1];
      const std::uint64_t events = rng.next_poisson(process.switching_rate * gap);
      if (events % 2 == 1) value = -value;
      columns[k][i] = value;
    }
  }

  MatchedStreamSet out;
  for (std::size_t k = 0; k < positions.size(); ++k)
    out.add("x" + std::to_string(k), BinaryStream(std::move(columns[k])));
  return out;
}

}  // namespace bell
