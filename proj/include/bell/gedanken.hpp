#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bell/binary_stream.hpp"
#include "bell/correlation.hpp"
#include "bell/identities.hpp"
#include "bell/lhv.hpp"
#include "bell/sources.hpp"

namespace bell {

enum class Acquisition { Matched, Unmatched };

struct ExperimentProtocol {
  Acquisition acquisition = Acquisition::Matched;
  std::vector<double> a_settings;  // radians
  std::vector<double> b_settings;  // radians
  bool locality = true;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

enum class ExpressionKind { ThreeTerm, FourTerm };

struct LabeledCorrelation {
  std::string label;
  CorrelationEstimate estimate;
};

struct ViolationReport {
  std::vector<LabeledCorrelation> correlations;
  ExpressionKind expression = ExpressionKind::ThreeTerm;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double stderr_of_slack = 0.0;
  bool violated = false;
  bool exact = false;  // true for matched acquisition: slack is exact arithmetic
};

namespace detail {

inline double quadrature_stderr(const std::vector<LabeledCorrelation>& cs) {
  double sum_sq = 0.0;
  for (const auto& c : cs) {
    const double s = c.estimate.stderr_value();
    sum_sq += s * s;
  }
  return std::sqrt(sum_sq);
}

inline const LhvModel& require_model(const PairSource& source, const char* who) {
  const auto* model = std::get_if<LhvModel>(&source);
  if (!model)
    throw std::invalid_argument(std::string(who) +
                                ": matched acquisition needs a hidden-variable model; the "
                                "singlet sampler yields only one setting pair per trial");
  return *model;
}

}  // namespace detail

// Delayed-choice acquisition with two settings per side. Under locality the B
// readout ignores the remote setting, so one stream per setting suffices
// (4 total); a nonlocal readout needs one B stream per (b, a) combination
// (2 + 4 = 6 total). The count is of generated streams, not of distinct
// contents.
inline std::pair<MatchedStreamSet, std::size_t> run_delayed_choice(
    const LhvModel& model, const std::vector<double>& a_settings,
    const std::vector<double>& b_settings, bool locality, std::size_t n, std::uint64_t seed) {
  if (a_settings.size() != 2 || b_settings.size() != 2)
    throw std::invalid_argument("run_delayed_choice: exactly two settings per side");
  if (!locality && model.local())
    throw std::invalid_argument("run_delayed_choice: nonlocal acquisition needs a model with a "
                                "nonlocal B readout");
  if (n < 1) throw std::invalid_argument("run_delayed_choice: n must be >= 1");

  const std::size_t stream_count = locality ? 4 : 6;
  std::vector<std::vector<int>> columns(stream_count, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    TrialRng rng(seed, i);
    const double lambda = model.lambda_law(rng);
    columns[0][i] = model.readout_a(a_settings[0], lambda);
    columns[1][i] = model.readout_a(a_settings[1], lambda);
    if (locality) {
      columns[2][i] = model.readout_b(b_settings[0], lambda);
      columns[3][i] = model.readout_b(b_settings[1], lambda);
    } else {
      std::size_t k = 2;
      for (double b : b_settings)
        for (double a : a_settings) columns[k++][i] = model.nonlocal_b(b, a, lambda);
    }
  }

  MatchedStreamSet out;
  out.add("a1", BinaryStream(std::move(columns[0])));
  out.add("a2", BinaryStream(std::move(columns[1])));
  if (locality) {
    out.add("b1", BinaryStream(std::move(columns[2])));
    out.add("b2", BinaryStream(std::move(columns[3])));
  } else {
    std::size_t k = 2;
    for (std::size_t bi = 1; bi <= 2; ++bi)
      for (std::size_t ai = 1; ai <= 2; ++ai)
        out.add("b" + std::to_string(bi) + "|a" + std::to_string(ai),
                BinaryStream(std::move(columns[k++])));
  }
  return {std::move(out), stream_count};
}

// Three-correlation experiment at settings a, b, b'. Matched acquisition uses
// one shared-λ stream set, so the resulting slack is nonnegative by
// arithmetic; unmatched acquisition runs each pair independently, and the
// same-side (b, b') run exists only for hidden-variable sources.
inline ViolationReport three_correlation_experiment(const PairSource& source,
                                                    const ExperimentProtocol& protocol) {
  if (protocol.a_settings.size() != 1 || protocol.b_settings.size() != 2)
    throw std::invalid_argument(
        "three_correlation_experiment: need one A setting and two B settings");
  if (protocol.trials < 1)
    throw std::invalid_argument("three_correlation_experiment: trials must be >= 1");

  const double a = protocol.a_settings[0];
  const double b = protocol.b_settings[0];
  const double b2 = protocol.b_settings[1];

  ViolationReport report;
  report.expression = ExpressionKind::ThreeTerm;

  if (protocol.acquisition == Acquisition::Matched) {
    const LhvModel& model = detail::require_model(source, "three_correlation_experiment");
    const auto set = generate_matched_streams(
        model,
        {{Side::A, a, "a"}, {Side::B, b, "b"}, {Side::B, b2, "b'"}},
        protocol.trials, protocol.seed);
    report.correlations = {
        {"ab", correlate(set.stream(0), set.stream(1))},
        {"ab'", correlate(set.stream(0), set.stream(2))},
        {"bb'", correlate(set.stream(1), set.stream(2))},
    };
    const auto identity = bell_identity_three(set.stream(0), set.stream(1), set.stream(2));
    report.lhs = identity.lhs;
    report.rhs = identity.rhs;
    report.slack = identity.slack;
    report.exact = true;
    if (!identity.holds)
      throw std::runtime_error(
          "three_correlation_experiment: matched data violated the identity (internal error)");
  } else {
    const std::uint64_t seed = protocol.seed;
    const auto run_ab = run_pair(source, a, b, protocol.trials, subseed(seed, 0));
    const auto run_ab2 = run_pair(source, a, b2, protocol.trials, subseed(seed, 1));
    const auto run_bb2 = run_same_side_pair(source, b, b2, protocol.trials, subseed(seed, 2));
    report.correlations = {
        {"ab", correlate(run_ab.a, run_ab.b)},
        {"ab'", correlate(run_ab2.a, run_ab2.b)},
        {"bb'", correlate(run_bb2.a, run_bb2.b)},
    };
    const double c_ab = report.correlations[0].estimate.value();
    const double c_ab2 = report.correlations[1].estimate.value();
    const double c_bb2 = report.correlations[2].estimate.value();
    report.lhs = std::abs(c_ab - c_ab2);
    report.rhs = 1.0 - c_bb2;
    report.slack = check_inequality_three(c_ab, c_ab2, c_bb2);
    report.stderr_of_slack = detail::quadrature_stderr(report.correlations);
  }
  report.violated = report.slack < 0.0;
  return report;
}

// Four-correlation (CHSH) experiment. Matched acquisition requires locality:
// a nonlocal readout yields six streams, not four, and the four-stream
// arithmetic bound no longer applies.
inline ViolationReport chsh_experiment(const PairSource& source,
                                       const ExperimentProtocol& protocol) {
  if (protocol.a_settings.size() != 2 || protocol.b_settings.size() != 2)
    throw std::invalid_argument("chsh_experiment: need two settings per side");
  if (protocol.trials < 1)
    throw std::invalid_argument("chsh_experiment: trials must be >= 1");
  if (protocol.acquisition == Acquisition::Matched && !protocol.locality)
    throw std::invalid_argument(
        "chsh_experiment: matched acquisition with a nonlocal readout produces six data "
        "streams, which is inconsistent with the four-stream bound");

  const double a = protocol.a_settings[0], a2 = protocol.a_settings[1];
  const double b = protocol.b_settings[0], b2 = protocol.b_settings[1];

  ViolationReport report;
  report.expression = ExpressionKind::FourTerm;
  report.rhs = 2.0;

  if (protocol.acquisition == Acquisition::Matched) {
    const LhvModel& model = detail::require_model(source, "chsh_experiment");
    const auto set = generate_matched_streams(model,
                                              {{Side::A, a, "a"},
                                               {Side::A, a2, "a'"},
                                               {Side::B, b, "b"},
                                               {Side::B, b2, "b'"}},
                                              protocol.trials, protocol.seed);
    report.correlations = {
        {"ab", correlate(set.stream(0), set.stream(2))},
        {"ab'", correlate(set.stream(0), set.stream(3))},
        {"a'b", correlate(set.stream(1), set.stream(2))},
        {"a'b'", correlate(set.stream(1), set.stream(3))},
    };
    const auto identity =
        bell_identity_four(set.stream(0), set.stream(1), set.stream(2), set.stream(3));
    report.lhs = identity.lhs;
    report.slack = identity.slack;
    report.exact = true;
    if (!identity.holds)
      throw std::runtime_error(
          "chsh_experiment: matched data violated the identity (internal error)");
  } else {
    const std::vector<std::pair<double, double>> pairs = {{a, b}, {a, b2}, {a2, b}, {a2, b2}};
    const auto runs = generate_unmatched_runs(source, pairs, protocol.trials, protocol.seed);
    static const char* labels[] = {"ab", "ab'", "a'b", "a'b'"};
    for (std::size_t k = 0; k < 4; ++k)
      report.correlations.push_back({labels[k], correlate(runs[k].a, runs[k].b)});
    const double c_ab = report.correlations[0].estimate.value();
    const double c_ab2 = report.correlations[1].estimate.value();
    const double c_a2b = report.correlations[2].estimate.value();
    const double c_a2b2 = report.correlations[3].estimate.value();
    report.lhs = std::abs(c_ab + c_ab2) + std::abs(c_a2b - c_a2b2);
    report.slack = check_inequality_four(c_ab, c_ab2, c_a2b, c_a2b2);
    report.stderr_of_slack = detail::quadrature_stderr(report.correlations);
  }
  report.violated = report.slack < 0.0;
  return report;
}

struct ConditionalEstimate {
  double conditional_mean = 0.0;
  double unconditional_mean = 0.0;
  double stderr_value = 0.0;  // standard error of the conditional mean
  std::size_t accepted = 0;
  std::size_t draws = 0;
};

// Estimates E[B(b') | A(a) = observed_a, B(b) = observed_b] by rejection
// sampling over λ. Observing (A, B) restricts the λ values compatible with
// them, so the counterfactual readout at b' is conditionally dependent on the
// observed pair.
inline ConditionalEstimate conditional_counterfactual(const LhvModel& model, double a_setting,
                                                      double b_setting, double b2_setting,
                                                      int observed_a, int observed_b,
                                                      std::size_t n, std::uint64_t seed) {
  if (!model.local())
    throw std::invalid_argument("conditional_counterfactual: model must be local");
  if ((observed_a != 1 && observed_a != -1) || (observed_b != 1 && observed_b != -1))
    throw std::invalid_argument("conditional_counterfactual: observations must be +1 or -1");
  if (n < 1) throw std::invalid_argument("conditional_counterfactual: n must be >= 1");

  std::int64_t cond_sum = 0, uncond_sum = 0;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    TrialRng rng(seed, i);
    const double lambda = model.lambda_law(rng);
    const int value_b2 = model.readout_b(b2_setting, lambda);
    uncond_sum += value_b2;
    if (model.readout_a(a_setting, lambda) == observed_a &&
        model.readout_b(b_setting, lambda) == observed_b) {
      cond_sum += value_b2;
      ++accepted;
    }
  }
  if (accepted == 0)
    throw std::runtime_error(
        "conditional_counterfactual: conditioning event never occurred in " +
        std::to_string(n) + " draws");

  ConditionalEstimate est;
  est.accepted = accepted;
  est.draws = n;
  est.conditional_mean = static_cast<double>(cond_sum) / static_cast<double>(accepted);
  est.unconditional_mean = static_cast<double>(uncond_sum) / static_cast<double>(n);
  est.stderr_value = std::sqrt((1.0 - est.conditional_mean * est.conditional_mean) /
                               static_cast<double>(accepted));
  return est;
}

}  // namespace bell
