#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell/binary_stream.hpp"
#include "bell/rng.hpp"

namespace bell {

// sign with the fixed tie-break sign(0) = +1.
inline int sign_pm(double x) noexcept { return x >= 0.0 ? +1 : -1; }

enum class Side { A, B };

struct Setting {
  Side side;
  double angle;  // radians
  std::string label;
};

// Hidden-variable model: a per-trial λ law plus deterministic ±1 readouts.
// With nonlocal_b absent the B side depends only on (b, λ) — the locality
// property. The optional nonlocal readout additionally sees the remote A
// setting.
struct LhvModel {
  std::string name;
  std::function<double(TrialRng&)> lambda_law;
  std::function<int(double setting, double lambda)> readout_a;
  std::function<int(double setting, double lambda)> readout_b;
  std::function<int(double setting, double remote_setting, double lambda)> nonlocal_b;

  bool local() const noexcept { return !nonlocal_b; }

  // Sign-readout model with uniform λ on [0, 2π):
  //   A(a, λ) = sign(cos(λ - a)),  B(b, λ) = -sign(cos(λ - b)).
  // Its pair correlation is -1 + 2|b - a|/π (wrapped).
  static LhvModel bell_linear() {
    LhvModel m;
    m.name = "bell-linear";
    m.lambda_law = [](TrialRng& rng) { return rng.next_angle(); };
    m.readout_a = [](double a, double l) { return sign_pm(std::cos(l - a)); };
    m.readout_b = [](double b, double l) { return -sign_pm(std::cos(l - b)); };
    return m;
  }

  // Same A side, but B additionally shifts its reference by half the remote
  // setting. The specific form is immaterial; any explicit dependence on the
  // remote setting makes the model nonlocal.
  static LhvModel nonlocal_toy() {
    LhvModel m = bell_linear();
    m.name = "nonlocal-toy";
    m.nonlocal_b = [](double b, double remote, double l) {
      return -sign_pm(std::cos(l - b + remote / 2.0));
    };
    return m;
  }
};

inline int lhv_readout(const LhvModel& model, Side side, double setting, double lambda,
                       std::optional<double> remote_setting = std::nullopt) {
  if (side == Side::A) {
    if (remote_setting)
      throw std::invalid_argument("lhv_readout: remote setting is meaningless on the A side");
    return model.readout_a(setting, lambda);
  }
  if (remote_setting) {
    if (model.local())
      throw std::invalid_argument("lhv_readout: remote setting supplied to a local model");
    return model.nonlocal_b(setting, *remote_setting, lambda);
  }
  return model.readout_b(setting, lambda);
}

// Matched (counterfactual) acquisition: one λ per trial, shared by every
// requested setting. Trial i depends only on (seed, i).
inline MatchedStreamSet generate_matched_streams(const LhvModel& model,
                                                 const std::vector<Setting>& settings,
                                                 std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_matched_streams: n must be >= 1");
  if (settings.empty())
    throw std::invalid_argument("generate_matched_streams: need at least one setting");

  std::vector<std::vector<int>> columns(settings.size(), std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    TrialRng rng(seed, i);
    const double lambda = model.lambda_law(rng);
    for (std::size_t k = 0; k < settings.size(); ++k) {
      const auto& s = settings[k];
      columns[k][i] = s.side == Side::A ? model.readout_a(s.angle, lambda)
                                        : model.readout_b(s.angle, lambda);
    }
  }

  MatchedStreamSet out;
  for (std::size_t k = 0; k < settings.size(); ++k)
    out.add(settings[k].label, BinaryStream(std::move(columns[k])));
  return out;
}

}  // namespace bell
