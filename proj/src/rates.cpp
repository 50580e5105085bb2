#include "slicerank/rates.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "slicerank/errors.hpp"

namespace slicerank {

namespace {

constexpr double kTolerance = 1e-12;
constexpr int kMaxIterations = 200;

struct Extremum {
  double at = 0;
  double value = 0;
};

// Golden-section search for the maximum of a unimodal function on (lo, hi).
Extremum golden_max(const std::function<double(double)>& fn, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int i = 0; i < kMaxIterations && b - a > kTolerance; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = fn(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

// log of the mean of e^{θX}, X uniform on {0, 1/m, ..., 1}, written with
// t = θ/m: log(expm1((m+1)t) / ((m+1) expm1(t))).
double log_mgf(double m, double t) {
  const double theta = m * t;
  if (std::abs(theta) < 1e-9) return theta / 2;
  return std::log(std::expm1((m + 1) * t) / ((m + 1) * std::expm1(t)));
}

void check_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 0.5)) throw InvalidArgument("alpha must lie in (0, 1/2)");
}

}  // namespace

RateResult rate_I(double m, double alpha) {
  if (!(m > 0)) throw InvalidArgument("rate_I: m must be positive");
  check_alpha(alpha);
  // x = e^{θ/m} in (0, 1); the objective tends to 0 as x → 1 and to -∞ as x → 0.
  const auto objective = [&](double x) {
    const double t = std::log(x);
    return alpha * m * t - log_mgf(m, t);
  };
  const auto best = golden_max(objective, 0.0, 1.0);
  RateResult r;
  r.value = best.value;
  r.argmax_theta = m * std::log(best.at);
  r.tolerance = kTolerance;
  r.cross_check = std::numeric_limits<double>::quiet_NaN();
  return r;
}

RateResult rate_I(const RateQuery& q) {
  if (q.m < 1) throw InvalidArgument("rate_I: m must be >= 1");
  if (q.alpha <= 0 || q.alpha >= Rational(1, 2)) throw InvalidArgument("alpha must lie in (0, 1/2)");
  return rate_I(static_cast<double>(q.m), to_double(q.alpha));
}

RateResult rate_I_limit(double alpha) {
  check_alpha(alpha);
  // y = e^θ in (0, 1).
  const auto objective = [&](double y) {
    const double theta = std::log(y);
    const double lg = std::abs(theta) < 1e-9 ? theta / 2 : std::log(std::expm1(theta) / theta);
    return alpha * theta - lg;
  };
  const auto best = golden_max(objective, 0.0, 1.0);
  return {best.value, std::log(best.at), kTolerance, std::numeric_limits<double>::quiet_NaN()};
}

RateResult rate_J(double s) {
  if (!(s > 1)) throw InvalidArgument("rate_J: s must exceed 1");
  const auto via_i = rate_I(s - 1, 1.0 / 3);
  // Minimize log of (1 - x^s)/(1 - x) x^{-(s-1)/3} over (0, 1).
  const auto neg_log = [&](double x) {
    const double t = std::log(x);
    const double ratio = std::abs(t) < 1e-12 ? s : std::expm1(s * t) / std::expm1(t);
    return -(std::log(ratio) - (s - 1) / 3 * t);
  };
  const auto best = golden_max(neg_log, 0.0, 1.0);
  RateResult r;
  r.value = std::exp(-via_i.value);
  r.argmax_theta = best.at;
  r.tolerance = 1e-9;
  r.cross_check = std::exp(-best.value) / s;
  if (std::abs(r.value - r.cross_check) > 1e-9)
    throw std::logic_error("rate_J: the two evaluations disagree at s = " + std::to_string(s));
  return r;
}

double j_limit_objective(double z) {
  if (!(z > 1)) throw InvalidArgument("j_limit_objective: z must exceed 1");
  return (z - 1 / (z * z)) / (3 * std::log(z));
}

RateResult rate_J_limit() {
  // The objective tends to 1 as z → 1 and grows without bound; expand the
  // right end until it rises.
  double hi = 2;
  while (j_limit_objective(2 * hi) < j_limit_objective(hi)) hi *= 2;
  const auto best = golden_max([](double z) { return -j_limit_objective(z); }, 1.0, 2 * hi);
  return {-best.value, best.at, kTolerance, std::numeric_limits<double>::quiet_NaN()};
}

Constants constants() {
  Constants c;
  c.delta = rate_I(1.0, 1.0 / 3).value;
  c.epsilon = c.delta / 2;
  c.delta_closed_form = std::log(2.0 / 3) + 2.0 / 3 * std::log(2.0);
  return c;
}

TupleFraction tuple_fraction_exact(std::int64_t m, const Rational& alpha, std::int64_t n, const Guards& guards) {
  if (m < 1 || n < 0) throw InvalidArgument("tuple_fraction_exact: need m >= 1 and n >= 0");
  if (alpha <= 0 || alpha >= Rational(1, 2)) throw InvalidArgument("alpha must lie in (0, 1/2)");
  const std::size_t sums = static_cast<std::size_t>(m * n) + 1;
  if (sums * static_cast<std::size_t>(n + 1) > guards.dp_cells)
    throw GuardExceeded("tuple_fraction_exact: n*m = " + std::to_string(m * n) + " exceeds the DP cap");
  // Σa <= α m n  ⟺  den·Σa <= num·m·n.
  const BigInt num = numerator(alpha), den = denominator(alpha);
  const BigInt limit = num * m * n;
  std::vector<BigInt> ways(sums, 0);
  ways[0] = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    // Multiply by 1 + x + ... + x^m using a sliding window.
    std::vector<BigInt> next(sums, 0);
    BigInt window = 0;
    for (std::size_t s = 0; s < sums; ++s) {
      window += ways[s];
      if (s >= static_cast<std::size_t>(m) + 1) window -= ways[s - m - 1];
      next[s] = window;
    }
    ways = std::move(next);
  }
  TupleFraction out;
  for (std::size_t s = 0; s < sums; ++s)
    if (den * s <= limit) out.count += ways[s];
  out.fraction = Rational(out.count, pow_big(BigInt(m + 1), static_cast<unsigned>(n)));
  return out;
}

}  // namespace slicerank
