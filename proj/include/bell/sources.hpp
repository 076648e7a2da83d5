#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bell/binary_stream.hpp"
#include "bell/lhv.hpp"
#include "bell/rng.hpp"
#include "bell/singlet.hpp"

namespace bell {

// The quantum singlet sampler as a pair source; stateless.
struct SingletSource {};

// A source of correlated (A, B) pairs: either quantum singlet statistics or a
// concrete hidden-variable model.
using PairSource = std::variant<SingletSource, LhvModel>;

inline std::string source_name(const PairSource& source) {
  if (std::holds_alternative<SingletSource>(source)) return "singlet";
  return std::get<LhvModel>(source).name;
}

struct PairedRun {
  double a_setting;
  double b_setting;
  BinaryStream a;
  BinaryStream b;
};

// One independent run for a single setting pair. Runs with distinct indices
// share no trial randomness.
inline PairedRun run_pair(const PairSource& source, double a_setting, double b_setting,
                          std::size_t n, std::uint64_t run_seed) {
  std::vector<int> xa(n), xb(n);
  if (const auto* model = std::get_if<LhvModel>(&source)) {
    for (std::size_t i = 0; i < n; ++i) {
      TrialRng rng(run_seed, i);
      const double lambda = model->lambda_law(rng);
      xa[i] = model->readout_a(a_setting, lambda);
      xb[i] = model->local() ? model->readout_b(b_setting, lambda)
                             : model->nonlocal_b(b_setting, a_setting, lambda);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      TrialRng rng(run_seed, i);
      const auto [s, t] = sample_singlet_pair(a_setting, b_setting, rng);
      xa[i] = s;
      xb[i] = t;
    }
  }
  return {a_setting, b_setting, BinaryStream(std::move(xa)), BinaryStream(std::move(xb))};
}

// Unmatched acquisition: every setting pair gets its own run; no trial index
// is shared across runs.
inline std::vector<PairedRun> generate_unmatched_runs(
    const PairSource& source, const std::vector<std::pair<double, double>>& setting_pairs,
    std::size_t n_per_run, std::uint64_t seed) {
  if (n_per_run < 1) throw std::invalid_argument("generate_unmatched_runs: n_per_run must be >= 1");
  std::vector<PairedRun> runs;
  runs.reserve(setting_pairs.size());
  for (std::size_t r = 0; r < setting_pairs.size(); ++r)
    runs.push_back(run_pair(source, setting_pairs[r].first, setting_pairs[r].second, n_per_run,
                            subseed(seed, r)));
  return runs;
}

// A same-side B run at two alternative settings sharing λ per trial. Only a
// hidden-variable model assigns joint statistics to this pair; the quantum
// operators for two settings on the same particle do not commute, so the
// singlet source must refuse it.
inline PairedRun run_same_side_pair(const PairSource& source, double b_setting,
                                    double b2_setting, std::size_t n, std::uint64_t run_seed) {
  const auto* model = std::get_if<LhvModel>(&source);
  if (!model)
    throw std::invalid_argument(
        "run_same_side_pair: the singlet source assigns no joint statistics to two "
        "same-side settings");
  std::vector<int> xb(n), xb2(n);
  for (std::size_t i = 0; i < n; ++i) {
    TrialRng rng(run_seed, i);
    const double lambda = model->lambda_law(rng);
    xb[i] = model->readout_b(b_setting, lambda);
    xb2[i] = model->readout_b(b2_setting, lambda);
  }
  return {b_setting, b2_setting, BinaryStream(std::move(xb)), BinaryStream(std::move(xb2))};
}

}  // namespace bell
