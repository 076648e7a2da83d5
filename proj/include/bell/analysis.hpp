#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bell/correlation_function.hpp"
#include "bell/gedanken.hpp"
#include "bell/identities.hpp"

namespace bell {

// Coarse grid plus shrinking-box refinement around the incumbent optimum.
struct ScanGrid {
  double lo = -M_PI;
  double hi = M_PI;
  std::size_t steps = 64;
  std::size_t refinement_rounds = 4;
  double refinement_shrink = 0.25;

  void validate() const {
    if (!(hi > lo)) throw std::invalid_argument("ScanGrid: hi must exceed lo");
    if (steps < 2) throw std::invalid_argument("ScanGrid: steps must be >= 2");
    if (!(refinement_shrink > 0.0 && refinement_shrink < 1.0))
      throw std::invalid_argument("ScanGrid: shrink factor must be in (0, 1)");
  }

  double resolution() const noexcept { return (hi - lo) / static_cast<double>(steps - 1); }
};

struct TripleSlack {
  std::array<double, 3> triple;
  double slack;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::array<double, 3> worst_triple = {0.0, 0.0, 0.0};
  double worst_slack = 0.0;
  std::vector<TripleSlack> violations;
};

// Checks whether f could be the correlation of a wide-sense-stationary ±1
// process, by evaluating the three-point consistency slack
//   (1 - f(x3-x2)) - |f(x2-x1) - f(x3-x1)|
// over every grid triple x1 < x2 < x3. Negative slack anywhere certifies that
// no such process exists (to grid resolution).
inline FeasibilityVerdict wss_feasibility_scan(const CorrelationFunction& f,
                                               const ScanGrid& grid) {
  grid.validate();
  const double res = grid.resolution();
  std::vector<double> points(grid.steps);
  for (std::size_t i = 0; i < grid.steps; ++i) points[i] = grid.lo + res * static_cast<double>(i);

  FeasibilityVerdict verdict;
  verdict.worst_slack = 2.0;
  for (std::size_t i = 0; i < grid.steps; ++i)
    for (std::size_t j = i + 1; j < grid.steps; ++j)
      for (std::size_t k = j + 1; k < grid.steps; ++k) {
        const double slack = (1.0 - f(points[k] - points[j])) -
                             std::abs(f(points[j] - points[i]) - f(points[k] - points[i]));
        if (slack < verdict.worst_slack) {
          verdict.worst_slack = slack;
          verdict.worst_triple = {points[i], points[j], points[k]};
        }
        if (slack < 0.0) verdict.violations.push_back({{points[i], points[j], points[k]}, slack});
      }
  verdict.feasible = verdict.worst_slack >= 0.0;
  return verdict;
}

namespace detail {

inline std::vector<double> linspace(double center, double half_width, std::size_t steps) {
  std::vector<double> out(steps);
  const double lo = center - half_width;
  const double step = 2.0 * half_width / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace detail

struct ThreeAngleSearchResult {
  std::array<double, 3> angles = {0.0, 0.0, 0.0};  // (a, b, b')
  double violation = 0.0;  // positive = the three-term condition is violated
};

// Maximizes |f(b-a) - f(b'-a)| - (1 - f(b'-b)) by grid search with shrinking
// refinement. The incumbent is only replaced by a strictly better value, so
// ties resolve to the lexicographically first grid point and refinement is
// monotone.
inline ThreeAngleSearchResult violation_search_three(const CorrelationFunction& f,
                                                     const ScanGrid& grid) {
  grid.validate();
  const auto objective = [&f](double a, double b, double b2) {
    return std::abs(f(b - a) - f(b2 - a)) - (1.0 - f(b2 - b));
  };

  ThreeAngleSearchResult best;
  best.violation = -std::numeric_limits<double>::infinity();
  const double span = grid.hi - grid.lo;
  const double center = 0.5 * (grid.lo + grid.hi);
  std::array<double, 3> centers = {center, center, center};
  double half_width = 0.5 * span;

  for (std::size_t round = 0; round <= grid.refinement_rounds; ++round) {
    const auto as = detail::linspace(centers[0], half_width, grid.steps);
    const auto bs = detail::linspace(centers[1], half_width, grid.steps);
    const auto b2s = detail::linspace(centers[2], half_width, grid.steps);
    for (double a : as)
      for (double b : bs)
        for (double b2 : b2s) {
          const double v = objective(a, b, b2);
          if (v > best.violation) {
            best.violation = v;
            best.angles = {a, b, b2};
          }
        }
    centers = best.angles;
    half_width *= grid.refinement_shrink;
  }
  return best;
}

struct ChshSearchResult {
  std::array<double, 4> angles = {0.0, 0.0, 0.0, 0.0};  // (a, a', b, b')
  double excess = 0.0;  // positive = the four-term condition is violated
};

// Maximizes |f(b-a) + f(b'-a)| + |f(b-a') - f(b'-a')| - 2. For fixed (b, b')
// the two bracketed terms decouple, so each round is a 2D scan over (b, b')
// with independent 1D scans over a and a'.
inline ChshSearchResult violation_search_chsh(const CorrelationFunction& f,
                                              const ScanGrid& grid) {
  grid.validate();
  ChshSearchResult best;
  best.excess = -std::numeric_limits<double>::infinity();
  const double span = grid.hi - grid.lo;
  const double center = 0.5 * (grid.lo + grid.hi);
  std::array<double, 4> centers = {center, center, center, center};
  double half_width = 0.5 * span;

  for (std::size_t round = 0; round <= grid.refinement_rounds; ++round) {
    const auto as = detail::linspace(centers[0], half_width, grid.steps);
    const auto a2s = detail::linspace(centers[1], half_width, grid.steps);
    const auto bs = detail::linspace(centers[2], half_width, grid.steps);
    const auto b2s = detail::linspace(centers[3], half_width, grid.steps);
    for (double b : bs)
      for (double b2 : b2s) {
        double best_sum = -std::numeric_limits<double>::infinity(), best_a = 0.0;
        for (double a : as) {
          const double t = std::abs(f(b - a) + f(b2 - a));
          if (t > best_sum) {
            best_sum = t;
            best_a = a;
          }
        }
        double best_diff = -std::numeric_limits<double>::infinity(), best_a2 = 0.0;
        for (double a2 : a2s) {
          const double t = std::abs(f(b - a2) - f(b2 - a2));
          if (t > best_diff) {
            best_diff = t;
            best_a2 = a2;
          }
        }
        const double v = best_sum + best_diff - 2.0;
        if (v > best.excess) {
          best.excess = v;
          best.angles = {best_a, best_a2, b, b2};
        }
      }
    centers = best.angles;
    half_width *= grid.refinement_shrink;
  }
  return best;
}

// First-order error propagation for the slack of a Monte Carlo report. Each
// term enters the slack with derivative ±1, and unmatched runs are
// independent, so the errors add in quadrature. Matched reports are exact
// arithmetic and get stderr 0.
inline ViolationReport slack_statistics(ViolationReport report) {
  if (report.exact) {
    report.stderr_of_slack = 0.0;
    return report;
  }
  double sum_sq = 0.0;
  for (const auto& c : report.correlations) {
    const double s = c.estimate.stderr_value();
    sum_sq += s * s;
  }
  report.stderr_of_slack = std::sqrt(sum_sq);
  return report;
}

// Decision rule for calling a violation from sampled data: the slack must be
// negative by more than four propagated standard errors.
inline bool significant_violation(const ViolationReport& report) {
  if (report.exact) return report.slack < 0.0;
  return report.slack < -4.0 * report.stderr_of_slack;
}

}  // namespace bell
