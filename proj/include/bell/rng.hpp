#pragma once

#include <cmath>
#include <cstdint>

namespace bell {

// SplitMix64 finalizer. Statistically strong enough for Monte Carlo use and
// cheap enough to re-key per trial.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Counter-based substream generator: the values drawn for trial `t` under
// seed `s` depend only on (s, t, draw index), so trials may be generated in
// any order, or in parallel, with identical results.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept
      : base_(mix64(seed + kGolden * (trial + 1)) ^ mix64(trial + 0x6A09E667F3BCC909ull)) {}

  std::uint64_t next_u64() noexcept { return mix64(base_ + kGolden * (++counter_)); }

  // Uniform in [0, 1), 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Fair ±1 coin.
  int next_sign() noexcept { return (next_u64() >> 63) ? +1 : -1; }

  // Uniform angle in [0, 2π).
  double next_angle() noexcept { return next_double() * 2.0 * M_PI; }

  // Knuth's product method, chunked so the running exponential never
  // underflows for large means.
  std::uint64_t next_poisson(double mean) {
    std::uint64_t count = 0;
    while (mean > 0.0) {
      const double chunk = mean > 30.0 ? 30.0 : mean;
      mean -= chunk;
      const double limit = std::exp(-chunk);
      double prod = next_double();
      while (prod >= limit) {
        ++count;
        prod *= next_double();
      }
    }
    return count;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Derives an independent sub-seed, used to key per-run streams.
constexpr std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(kGolden * (index + 1)));
}

}  // namespace bell
