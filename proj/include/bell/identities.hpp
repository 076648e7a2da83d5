#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "bell/binary_stream.hpp"
#include "bell/correlation.hpp"

namespace bell {

// Result of evaluating a three- or four-stream arithmetic identity. `holds`
// is decided on integer numerators scaled by N, so there is no tolerance
// anywhere; for genuinely index-matched streams it is always true.
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  std::vector<std::int64_t> exact_numerators;  // one per correlation term
};

// |<ab> - <ab'>| <= 1 - <bb'>, checked as |S_ab - S_ab'| <= N - S_bb'.
inline IdentityReport bell_identity_three(const BinaryStream& a, const BinaryStream& b,
                                          const BinaryStream& b2) {
  if (a.size() != b.size() || a.size() != b2.size())
    throw std::invalid_argument("bell_identity_three: stream lengths differ");
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t s_ab = correlate(a, b).sum;
  const std::int64_t s_ab2 = correlate(a, b2).sum;
  const std::int64_t s_bb2 = correlate(b, b2).sum;

  const std::int64_t lhs_num = std::llabs(s_ab - s_ab2);
  const std::int64_t rhs_num = n - s_bb2;

  IdentityReport r;
  r.lhs = static_cast<double>(lhs_num) / static_cast<double>(n);
  r.rhs = static_cast<double>(rhs_num) / static_cast<double>(n);
  r.slack = static_cast<double>(rhs_num - lhs_num) / static_cast<double>(n);
  r.holds = lhs_num <= rhs_num;
  r.exact_numerators = {s_ab, s_ab2, s_bb2};
  return r;
}

// |<ab> + <ab'>| + |<a'b> - <a'b'>| <= 2, checked on numerators scaled by N.
inline IdentityReport bell_identity_four(const BinaryStream& a, const BinaryStream& a2,
                                         const BinaryStream& b, const BinaryStream& b2) {
  if (a.size() != a2.size() || a.size() != b.size() || a.size() != b2.size())
    throw std::invalid_argument("bell_identity_four: stream lengths differ");
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t s_ab = correlate(a, b).sum;
  const std::int64_t s_ab2 = correlate(a, b2).sum;
  const std::int64_t s_a2b = correlate(a2, b).sum;
  const std::int64_t s_a2b2 = correlate(a2, b2).sum;

  const std::int64_t lhs_num = std::llabs(s_ab + s_ab2) + std::llabs(s_a2b - s_a2b2);
  const std::int64_t rhs_num = 2 * n;

  IdentityReport r;
  r.lhs = static_cast<double>(lhs_num) / static_cast<double>(n);
  r.rhs = 2.0;
  r.slack = static_cast<double>(rhs_num - lhs_num) / static_cast<double>(n);
  r.holds = lhs_num <= rhs_num;
  r.exact_numerators = {s_ab, s_ab2, s_a2b, s_a2b2};
  return r;
}

namespace detail {
inline void require_correlation_value(double c, const char* who) {
  if (!(c >= -1.0 && c <= 1.0))
    throw std::domain_error(std::string(who) + ": correlation value outside [-1, 1]");
}
}  // namespace detail

// Consistency slack of the three-term inequality for hypothesized correlation
// values. Negative slack means no matched data could produce these values.
inline double check_inequality_three(double c_ab, double c_ab2, double c_bb2) {
  detail::require_correlation_value(c_ab, "check_inequality_three");
  detail::require_correlation_value(c_ab2, "check_inequality_three");
  detail::require_correlation_value(c_bb2, "check_inequality_three");
  return (1.0 - c_bb2) - std::abs(c_ab - c_ab2);
}

// CHSH-form consistency slack for four hypothesized correlation values.
inline double check_inequality_four(double c_ab, double c_ab2, double c_a2b, double c_a2b2) {
  detail::require_correlation_value(c_ab, "check_inequality_four");
  detail::require_correlation_value(c_ab2, "check_inequality_four");
  detail::require_correlation_value(c_a2b, "check_inequality_four");
  detail::require_correlation_value(c_a2b2, "check_inequality_four");
  return 2.0 - (std::abs(c_ab + c_ab2) + std::abs(c_a2b - c_a2b2));
}

}  // namespace bell
