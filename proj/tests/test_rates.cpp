#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "slicerank/errors.hpp"
#include "slicerank/rates.hpp"

using namespace slicerank;

namespace {

// Closed forms: δ = log((2/3) 2^{2/3}); J(3) at the root of 4x² + x − 2 = 0.
const double kDelta = std::log(2.0 / 3.0) + 2.0 / 3.0 * std::log(2.0);

double j3_closed_form() {
  const double x = (-1 + std::sqrt(33.0)) / 8;
  return (1 + x + x * x) * std::pow(x, -2.0 / 3.0) / 3;
}

}  // namespace

TEST(Rates, DeltaClosedForm) {
  const auto r = rate_I(RateQuery{1, Rational(1, 3)});
  EXPECT_NEAR(r.value, kDelta, 1e-12);
  EXPECT_NEAR(r.value, 0.0566330122651325, 1e-13);
  EXPECT_LT(r.argmax_theta, 0);
}

TEST(Rates, AgreesWithGridOracle) {
  for (int m : {1, 2, 3, 5, 8, 13})
    for (double alpha : {0.1, 0.25, 1.0 / 3.0, 0.45, 0.49})
      EXPECT_NEAR(rate_I(m, alpha).value, oracle::rate_I(m, alpha), 1e-9) << m << " " << alpha;
}

TEST(Rates, IncreasingInM) {
  for (double alpha : {0.25, 1.0 / 3.0, 0.49}) {
    double prev = 0;
    for (int m = 1; m <= 50; ++m) {
      const double v = rate_I(m, alpha).value;
      EXPECT_GT(v, prev) << m << " " << alpha;
      prev = v;
    }
  }
  EXPECT_GT(rate_I(2, 1.0 / 3).value, rate_I(1, 1.0 / 3).value);
}

TEST(Rates, LargeMApproachesLimit) {
  for (double alpha : {0.25, 1.0 / 3.0, 0.45}) {
    const double limit = rate_I_limit(alpha).value;
    EXPECT_NEAR(rate_I(1e4, alpha).value, limit, 1e-4) << alpha;
    EXPECT_LT(rate_I(1e4, alpha).value, limit);
  }
}

TEST(Rates, DomainErrors) {
  EXPECT_THROW(rate_I(RateQuery{1, Rational(1, 2)}), InvalidArgument);
  EXPECT_THROW(rate_I(RateQuery{1, Rational(0)}), InvalidArgument);
  EXPECT_THROW(rate_I(RateQuery{0, Rational(1, 3)}), InvalidArgument);
  EXPECT_THROW(rate_J(1.0), InvalidArgument);
}

TEST(RatesJ, KnownValues) {
  EXPECT_NEAR(rate_J(2).value, std::exp(-kDelta), 1e-12);
  EXPECT_NEAR(rate_J(2).value, 0.944940787421155, 1e-12);
  EXPECT_NEAR(rate_J(3).value, j3_closed_form(), 1e-10);
  EXPECT_NEAR(rate_J(3).argmax_theta, (-1 + std::sqrt(33.0)) / 8, 1e-5);
}

TEST(RatesJ, CrossCheckedAndDecreasing) {
  double prev = 1;
  for (double s : {2.0, 3.0, 4.0, 5.0, 8.0, 16.0, 64.0, 1e4}) {
    const auto r = rate_J(s);
    EXPECT_NEAR(r.value, r.cross_check, 1e-9) << s;
    EXPECT_NEAR(r.value, oracle::j_explicit(s), 1e-8) << s;
    EXPECT_GT(r.value, 0);
    EXPECT_LT(r.value, prev);
    prev = r.value;
  }
}

TEST(RatesJ, Limit) {
  const auto lim = rate_J_limit();
  EXPECT_NEAR(lim.value, 0.8414, 1e-4);
  EXPECT_NEAR(lim.value, 0.841434372343300, 1e-10);
  EXPECT_NEAR(rate_J(1e4).value, lim.value, 2e-3);
  for (double s : {2.0, 3.0, 10.0, 100.0, 1e4}) EXPECT_LT(lim.value, rate_J(s).value);
  EXPECT_NEAR(j_limit_objective(std::exp(1.0)), (std::exp(1.0) - std::exp(-2.0)) / 3, 1e-15);
  EXPECT_GE(j_limit_objective(std::exp(1.0)), lim.value);
}

TEST(Constants, EpsilonDelta) {
  const auto c = constants();
  EXPECT_NEAR(c.delta, 0.056633, 1e-6);
  EXPECT_NEAR(c.epsilon, 0.028316, 1e-6);
  EXPECT_EQ(c.delta, 2 * c.epsilon);
  EXPECT_NEAR(c.delta_closed_form, kDelta, 1e-15);
  EXPECT_NEAR(c.delta, c.delta_closed_form, 1e-12);
}

TEST(TupleFraction, Examples) {
  auto f = tuple_fraction_exact(1, Rational(1, 3), 6);
  EXPECT_EQ(f.count, 22);
  EXPECT_EQ(f.fraction, Rational(11, 32));
  EXPECT_LE(to_double(f.fraction), std::exp(-6 * kDelta));
  f = tuple_fraction_exact(2, Rational(1, 3), 6);
  EXPECT_EQ(f.count, 168);
  EXPECT_EQ(f.fraction, Rational(168, 729));
  f = tuple_fraction_exact(1, Rational(1, 3), 1);
  EXPECT_EQ(f.count, 1);
  EXPECT_EQ(f.fraction, Rational(1, 2));
}

TEST(TupleFraction, MatchesEnumerationAndRateBound) {
  int cases = 0;
  for (int m = 1; m <= 4; ++m)
    for (const Rational& alpha : {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(49, 100)})
      for (int n = 1; n <= 5; ++n) {
        std::vector<std::int64_t> w;
        for (int a = 0; a <= m; ++a) w.push_back(a);
        const auto f = tuple_fraction_exact(m, alpha, n);
        EXPECT_EQ(f.count, oracle::tuple_count(w, n, alpha * m));
        EXPECT_LE(to_double(f.fraction), std::exp(-rate_I(m, to_double(alpha)).value * n) * (1 + 1e-12));
        ++cases;
      }
  EXPECT_EQ(cases, 100);
}
