#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bell {

// Wraps an angle to [-π, π].
inline double wrap_angle(double d) noexcept {
  d = std::remainder(d, 2.0 * M_PI);
  return d;
}

// A hypothesized map from a setting/coordinate difference to a correlation in
// [-1, 1]. Angular kinds wrap their argument; Exponential and Tabulated treat
// it as a plain coordinate difference.
class CorrelationFunction {
 public:
  static CorrelationFunction neg_cosine() { return CorrelationFunction(NegCosine{}); }
  static CorrelationFunction cosine() { return CorrelationFunction(Cosine{}); }
  static CorrelationFunction bell_linear() { return CorrelationFunction(BellLinear{}); }

  static CorrelationFunction exponential(double correlation_length) {
    if (!(correlation_length > 0.0))
      throw std::invalid_argument("CorrelationFunction: correlation length must be > 0");
    return CorrelationFunction(Exponential{correlation_length});
  }

  // Points must be sorted by difference; queries are linearly interpolated and
  // never extrapolated.
  static CorrelationFunction tabulated(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
      throw std::invalid_argument("CorrelationFunction: tabulated grid needs >= 2 points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      if (!(points[i].first < points[i + 1].first))
        throw std::invalid_argument("CorrelationFunction: tabulated grid must be increasing");
    for (const auto& [d, v] : points)
      if (!(v >= -1.0 && v <= 1.0))
        throw std::invalid_argument("CorrelationFunction: tabulated value outside [-1, 1]");
    return CorrelationFunction(Tabulated{std::move(points)});
  }

  double operator()(double difference) const {
    if (!std::isfinite(difference))
      throw std::domain_error("CorrelationFunction: non-finite difference");
    if (std::holds_alternative<NegCosine>(kind_)) return -std::cos(wrap_angle(difference));
    if (std::holds_alternative<Cosine>(kind_)) return std::cos(wrap_angle(difference));
    if (std::holds_alternative<BellLinear>(kind_))
      return -1.0 + 2.0 * std::abs(wrap_angle(difference)) / M_PI;
    if (const auto* e = std::get_if<Exponential>(&kind_))
      return std::exp(-std::abs(difference) / e->length);
    const auto& grid = std::get<Tabulated>(kind_).points;
    if (difference < grid.front().first || difference > grid.back().first)
      throw std::out_of_range("CorrelationFunction: tabulated query outside grid range");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (difference <= grid[i + 1].first) {
        const double t = (difference - grid[i].first) / (grid[i + 1].first - grid[i].first);
        return grid[i].second + t * (grid[i + 1].second - grid[i].second);
      }
    }
    return grid.back().second;
  }

  bool angular() const noexcept {
    return std::holds_alternative<NegCosine>(kind_) || std::holds_alternative<Cosine>(kind_) ||
           std::holds_alternative<BellLinear>(kind_);
  }

  std::string name() const {
    if (std::holds_alternative<NegCosine>(kind_)) return "neg-cosine";
    if (std::holds_alternative<Cosine>(kind_)) return "cosine";
    if (std::holds_alternative<BellLinear>(kind_)) return "bell-linear";
    if (std::holds_alternative<Exponential>(kind_)) return "exponential";
    return "tabulated";
  }

 private:
  struct NegCosine {};
  struct Cosine {};
  struct BellLinear {};
  struct Exponential {
    double length;
  };
  struct Tabulated {
    std::vector<std::pair<double, double>> points;
  };
  using Kind = std::variant<NegCosine, Cosine, BellLinear, Exponential, Tabulated>;

  explicit CorrelationFunction(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

}  // namespace bell
