#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "slicerank/counting.hpp"
#include "slicerank/rates.hpp"

using namespace slicerank;

TEST(WeightedCount, Examples) {
  EXPECT_EQ(weighted_tuple_count({0, 1}, 6, Rational(1, 3)), 22);
  for (int n : {1, 5, 12}) EXPECT_EQ(weighted_tuple_count({0}, n, 0), 1);
  EXPECT_EQ(weighted_tuple_count({0, 1, 2}, 6, Rational(2, 3)), 168);
  EXPECT_EQ(weighted_tuple_count({0, 1}, 6, Rational(1, 3)), oracle::binomial(6, 0) + oracle::binomial(6, 1) + oracle::binomial(6, 2));
}

TEST(WeightedCount, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> w(1 + trial % 4);
    for (auto& v : w) v = std::uniform_int_distribution<std::int64_t>(-3, 5)(rng);
    const int n = 1 + trial % 6;
    const Rational threshold(std::uniform_int_distribution<std::int64_t>(-6, 12)(rng), 1 + trial % 5);
    EXPECT_EQ(weighted_tuple_count(w, n, threshold), oracle::tuple_count(w, n, threshold));
  }
}

TEST(WeightedCount, HoeffdingGrid) {
  // Threshold u_avg − ε(u_max − u_min) keeps the fraction below e^{−2nε²}.
  std::mt19937_64 rng(13);
  int cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> w(2 + trial % 4);
    for (auto& v : w) v = std::uniform_int_distribution<std::int64_t>(-4, 6)(rng);
    if (*std::max_element(w.begin(), w.end()) == *std::min_element(w.begin(), w.end())) w.back() += 1;
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    Rational avg(0);
    for (auto v : w) avg += v;
    avg /= static_cast<std::int64_t>(w.size());
    const int n = 1 + trial % 12;
    for (const Rational& eps : {Rational(0), Rational(1, 12), Rational(1, 6), Rational(1, 3)}) {
      const Rational threshold = avg - eps * (*hi - *lo);
      const BigInt count = weighted_tuple_count(w, n, threshold);
      const Rational fraction(count, pow_big(BigInt(w.size()), static_cast<unsigned>(n)));
      EXPECT_LE(to_double(fraction), hoeffding_fraction(eps, n) * (1 + 1e-12));
      ++cases;
    }
  }
  EXPECT_EQ(cases, 200);
}

TEST(PowerBound, Examples) {
  auto b = triangle_to_slice_power_bound(3, 6);
  EXPECT_EQ(b.count, 168);
  EXPECT_EQ(b.bound, 504);
  EXPECT_LT(b.bound, 2187);
  EXPECT_NEAR(b.asymptotic, 3 * std::pow(3 * rate_J(3).value, 6), 1e-9);
  EXPECT_EQ(triangle_to_slice_power_bound(2, 1).bound, 3);
  EXPECT_EQ(triangle_to_slice_power_bound(3, 1).bound, 3);
}

TEST(PowerBound, AgreesWithTupleFractionAndRate) {
  for (std::int64_t m = 1; m <= 8; ++m)
    for (std::int64_t n = 1; n <= 12; ++n) {
      const auto b = triangle_to_slice_power_bound(m + 1, n);
      const auto f = tuple_fraction_exact(m, Rational(1, 3), n);
      EXPECT_EQ(Rational(b.bound), 3 * pow_big(BigInt(m + 1), static_cast<unsigned>(n)) * f.fraction);
      // Exact count <= k^n e^{−I(k−1, 1/3) n}.
      EXPECT_LE(to_double(b.count), std::pow(m + 1.0, n) * std::exp(-rate_I(m, 1.0 / 3).value * n) * (1 + 1e-12));
    }
}

TEST(PowerBound, CoefficientSumsOfPolynomial) {
  // (1 + x + x²)^6 partial sums through degree 4: 1 + 6 + 21 + 50 + 90.
  std::vector<BigInt> poly{1};
  for (int i = 0; i < 6; ++i) {
    std::vector<BigInt> next(poly.size() + 2, 0);
    for (std::size_t d = 0; d < poly.size(); ++d)
      for (std::size_t e = 0; e < 3; ++e) next[d + e] += poly[d];
    poly = next;
  }
  EXPECT_EQ(poly[0] + poly[1] + poly[2] + poly[3] + poly[4], 168);
}
