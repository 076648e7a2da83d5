#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bell/bell.hpp"
#include "oracles.hpp"

using namespace bell;

namespace {

BinaryStream random_stream(std::size_t n, TrialRng& rng) {
  std::vector<int> v(n);
  for (auto& x : v) x = rng.next_sign();
  return BinaryStream(std::move(v));
}

}  // namespace

TEST_CASE("BinaryStream validates its entries") {
  CHECK_THROWS_AS(BinaryStream({}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryStream({1, 0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryStream({2}), std::invalid_argument);
  CHECK(BinaryStream({1, -1, 1}).size() == 3);
}

TEST_CASE("MatchedStreamSet enforces equal lengths and unique labels") {
  MatchedStreamSet set;
  set.add("a", BinaryStream({1, -1}));
  CHECK_THROWS_AS(set.add("b", BinaryStream({1, -1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(set.add("a", BinaryStream({1, 1})), std::invalid_argument);
  set.add("b", BinaryStream({-1, -1}));
  CHECK(set.count() == 2);
  CHECK(set.by_label("b")[0] == -1);
}

TEST_CASE("correlate on small streams") {
  const BinaryStream x({1, -1, 1});
  CHECK(correlate(x, x).value() == 1.0);

  const BinaryStream p({1, -1, 1, -1});
  const BinaryStream q({1, -1, -1, 1});
  CHECK(correlate(p, q).value() == 0.0);
  CHECK(correlate(p, q).sum == 0);

  CHECK_THROWS_AS(correlate(x, p), std::invalid_argument);
}

TEST_CASE("correlate properties on random streams") {
  TrialRng rng(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 200);
    const auto x = random_stream(n, rng);
    const auto y = random_stream(n, rng);
    CHECK(correlate(x, x).value() == 1.0);
    CHECK(correlate(x, x.negated()).value() == -1.0);
    const auto xy = correlate(x, y);
    const auto yx = correlate(y, x);
    CHECK(xy.sum == yx.sum);  // exact symmetry
    CHECK(std::llabs(xy.sum) <= static_cast<std::int64_t>(n));
    CHECK((xy.sum - static_cast<std::int64_t>(n)) % 2 == 0);  // parity of n
  }
}

TEST_CASE("correlate of independent fair coins concentrates near zero") {
  const std::size_t n = 100000;
  TrialRng rng(11, 0);
  const auto x = random_stream(n, rng);
  const auto y = random_stream(n, rng);
  // P(|value| >= 4/sqrt(n)) is about 6e-5; fixed seed makes this deterministic.
  CHECK(std::abs(correlate(x, y).value()) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("three-stream identity on worked examples") {
  const BinaryStream ones({1, 1, 1, 1});
  auto r = bell_identity_three(ones, ones, ones);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.holds);

  const BinaryStream a({1, -1}), b({1, 1}), b2({-1, 1});
  r = bell_identity_three(a, b, b2);
  CHECK(r.exact_numerators == std::vector<std::int64_t>{0, -2, 0});
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 1.0);
  CHECK(r.slack == 0.0);
  CHECK(r.holds);

  CHECK_THROWS_AS(bell_identity_three(a, b, ones), std::invalid_argument);
}

TEST_CASE("three-stream identity holds for every triple of length <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const std::uint32_t total = 1u << (3 * n);
    for (std::uint32_t bits = 0; bits < total; ++bits) {
      std::vector<int> a(n), b(n), b2(n);
      for (int i = 0; i < n; ++i) {
        a[i] = (bits >> i) & 1 ? 1 : -1;
        b[i] = (bits >> (n + i)) & 1 ? 1 : -1;
        b2[i] = (bits >> (2 * n + i)) & 1 ? 1 : -1;
      }
      REQUIRE(bell_identity_three(BinaryStream(a), BinaryStream(b), BinaryStream(b2)).holds);
    }
  }
}

TEST_CASE("three-stream identity holds for random long triples") {
  TrialRng rng(13, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 1000);
    const auto a = random_stream(n, rng);
    const auto b = random_stream(n, rng);
    const auto b2 = random_stream(n, rng);
    REQUIRE(bell_identity_three(a, b, b2).holds);
  }
}

TEST_CASE("four-stream identity on worked examples") {
  const BinaryStream ones({1, 1, 1});
  auto r = bell_identity_four(ones, ones, ones, ones);
  CHECK(r.lhs == 2.0);
  CHECK(r.slack == 0.0);
  CHECK(r.holds);

  TrialRng rng(17, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 100);
    const auto a = random_stream(n, rng);
    const auto b = random_stream(n, rng);
    // a' = a and b' = b collapses the expression to 2|<ab>|.
    const auto collapsed = bell_identity_four(a, a, b, b);
    CHECK(collapsed.lhs == 2.0 * std::abs(correlate(a, b).value()));
    CHECK(collapsed.holds);
  }
}

TEST_CASE("four-stream identity holds for random quads") {
  TrialRng rng(19, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 1000);
    REQUIRE(bell_identity_four(random_stream(n, rng), random_stream(n, rng),
                               random_stream(n, rng), random_stream(n, rng))
                .holds);
  }
}

TEST_CASE("three-term consistency check") {
  CHECK(check_inequality_three(-1.0, -1.0, 1.0) == 0.0);

  // All-cosine values at angles 0, 30, 150 degrees violate the condition.
  const double c_ab = -std::cos(M_PI / 6.0);       // -0.8660
  const double c_ab2 = -std::cos(5.0 * M_PI / 6.0);  // +0.8660
  const double c_bb2 = -std::cos(2.0 * M_PI / 3.0);  // +0.5
  CHECK_THAT(check_inequality_three(c_ab, c_ab2, c_bb2),
             Catch::Matchers::WithinAbs(-1.2321, 1e-4));

  CHECK_THAT(check_inequality_three(0.0, -std::sqrt(0.5), -std::sqrt(0.5)),
             Catch::Matchers::WithinAbs(1.0, 1e-12));

  CHECK_THROWS_AS(check_inequality_three(1.5, 0.0, 0.0), std::domain_error);
}

TEST_CASE("four-term consistency check") {
  CHECK(check_inequality_four(1.0, 1.0, 1.0, 1.0) == 0.0);
  CHECK(check_inequality_four(0.0, 0.0, 0.0, 0.0) == 2.0);

  const double v = std::sqrt(0.5);
  CHECK_THAT(check_inequality_four(-v, -v, v, -v), Catch::Matchers::WithinAbs(-0.8284, 1e-4));

  CHECK_THROWS_AS(check_inequality_four(0.0, 0.0, -1.01, 0.0), std::domain_error);
}

TEST_CASE("matched triple correlations always pass the three-term check") {
  TrialRng rng(23, 0);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + (rng.next_u64() % 500);
    const auto a = random_stream(n, rng);
    const auto b = random_stream(n, rng);
    const auto b2 = random_stream(n, rng);
    const double slack = check_inequality_three(correlate(a, b).value(),
                                                correlate(a, b2).value(),
                                                correlate(b, b2).value());
    REQUIRE(slack >= -1e-12);
  }
}

TEST_CASE("third correlation bounds on worked examples") {
  auto iv = third_correlation_bounds(1.0, 1.0);
  CHECK(iv.lower == 1.0);
  CHECK(iv.upper == 1.0);

  iv = third_correlation_bounds(0.5, -0.5);
  CHECK(iv.lower == -1.0);
  CHECK(iv.upper == 0.0);

  iv = third_correlation_bounds(0.0, 0.0);
  CHECK(iv.lower == -1.0);
  CHECK(iv.upper == 1.0);

  CHECK_THROWS_AS(third_correlation_bounds(2.0, 0.0), std::domain_error);
}

TEST_CASE("third correlation bounds match exhaustive N=5 enumeration") {
  const int n = 5;
  const auto table = oracle::enumerate_third_bounds(n);
  const double granularity = 2.0 / n;
  for (const auto& [key, achieved] : table) {
    const double c_ab = double(key.first) / n;
    const double c_ab2 = double(key.second) / n;
    const auto iv = third_correlation_bounds(c_ab, c_ab2);
    const double min_bb2 = double(achieved.min_bb2) / n;
    const double max_bb2 = double(achieved.max_bb2) / n;
    // Everything achieved lies inside the analytic interval, and the analytic
    // endpoints are within one lattice step of the achieved extremes.
    REQUIRE(min_bb2 >= iv.lower - 1e-12);
    REQUIRE(max_bb2 <= iv.upper + 1e-12);
    REQUIRE(min_bb2 - iv.lower <= granularity + 1e-12);
    REQUIRE(iv.upper - max_bb2 <= granularity + 1e-12);
  }
}

TEST_CASE("fourth correlation bounds on worked examples") {
  auto iv = fourth_correlation_bounds(1.0, 1.0, 1.0);
  CHECK(iv.feasible);
  CHECK(iv.lower == 1.0);
  CHECK(iv.upper == 1.0);

  iv = fourth_correlation_bounds(0.0, 0.0, 0.0);
  CHECK(iv.lower == -1.0);
  CHECK(iv.upper == 1.0);

  // Quantum CHSH inputs: the quantum fourth correlation -0.7071 lies outside
  // the feasible interval, whose lower endpoint is 3/sqrt(2) - 2.
  const double v = std::sqrt(0.5);
  iv = fourth_correlation_bounds(-v, -v, v);
  CHECK(iv.feasible);
  CHECK_THAT(iv.lower, Catch::Matchers::WithinAbs(3.0 * v - 2.0, 1e-12));
  CHECK(-v < iv.lower);  // quantum value excluded

  CHECK_THROWS_AS(fourth_correlation_bounds(0.0, 0.0, 1.5), std::domain_error);
}

TEST_CASE("fourth correlation bounds match the joint-distribution LP oracle") {
  for (double p = -1.0; p <= 1.001; p += 0.5)
    for (double q = -1.0; q <= 1.001; q += 0.5)
      for (double r = -1.0; r <= 1.001; r += 0.5) {
        const auto iv = fourth_correlation_bounds(p, q, r);
        const auto lp = oracle::fourth_bounds_lp(p, q, r);
        REQUIRE(lp.feasible == iv.feasible);
        REQUIRE_THAT(iv.lower, Catch::Matchers::WithinAbs(lp.lower, 1e-7));
        REQUIRE_THAT(iv.upper, Catch::Matchers::WithinAbs(lp.upper, 1e-7));
      }
}
