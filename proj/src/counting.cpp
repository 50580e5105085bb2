#include "slicerank/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "slicerank/errors.hpp"
#include "slicerank/rates.hpp"

namespace slicerank {

BigInt weighted_tuple_count(const std::vector<std::int64_t>& weights, std::int64_t n, const Rational& threshold,
                            const Guards& guards) {
  if (weights.empty()) throw InvalidArgument("weighted_tuple_count: empty weight multiset");
  if (n < 0) throw InvalidArgument("weighted_tuple_count: n must be >= 0");
  const auto [lo_it, hi_it] = std::minmax_element(weights.begin(), weights.end());
  const std::int64_t lo = *lo_it, spread = *hi_it - lo;
  const std::size_t sums = static_cast<std::size_t>(spread * n) + 1;
  if (sums * static_cast<std::size_t>(n + 1) > guards.dp_cells)
    throw GuardExceeded("weighted_tuple_count: sum range exceeds the DP cap");
  std::map<std::int64_t, std::int64_t> multiplicity;
  for (auto w : weights) ++multiplicity[w - lo];

  std::vector<BigInt> ways(sums, 0);
  ways[0] = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<BigInt> next(sums, 0);
    for (std::size_t s = 0; s < sums; ++s) {
      if (ways[s] == 0) continue;
      for (const auto& [w, mult] : multiplicity)
        if (s + w < sums) next[s + w] += ways[s] * mult;
    }
    ways = std::move(next);
  }
  // Σ (w - lo) <= n (threshold - lo)  ⟺  den·s <= num·n with the shifted threshold.
  const Rational shifted = threshold - lo;
  const BigInt num = numerator(shifted), den = denominator(shifted);
  BigInt count = 0;
  for (std::size_t s = 0; s < sums; ++s)
    if (den * s <= num * n) count += ways[s];
  return count;
}

PowerBound triangle_to_slice_power_bound(std::int64_t k, std::int64_t n, const Guards& guards) {
  if (k < 2 || n < 1) throw InvalidArgument("triangle_to_slice_power_bound: need k >= 2 and n >= 1");
  const std::int64_t top = (k - 1) * n;
  if (static_cast<std::size_t>(top + 1) * static_cast<std::size_t>(n) > guards.dp_cells)
    throw GuardExceeded("triangle_to_slice_power_bound: (k-1)n exceeds the DP cap");
  // Coefficients of (1 + x + ... + x^{k-1})^n up to the cutoff 3s <= (k-1)n.
  const std::int64_t cutoff = top / 3;
  std::vector<BigInt> poly(static_cast<std::size_t>(cutoff) + 1, 0);
  poly[0] = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t s = cutoff; s >= 0; --s) {
      BigInt acc = 0;
      for (std::int64_t a = 0; a < k && a <= s; ++a) acc += poly[static_cast<std::size_t>(s - a)];
      poly[static_cast<std::size_t>(s)] = acc;
    }
  }
  PowerBound out;
  for (std::int64_t s = 0; s <= cutoff; ++s)
    if (3 * s <= top) out.count += poly[static_cast<std::size_t>(s)];
  out.bound = 3 * out.count;
  out.asymptotic = 3 * std::pow(static_cast<double>(k) * rate_J(static_cast<double>(k)).value, static_cast<double>(n));
  return out;
}

double hoeffding_fraction(const Rational& epsilon, std::int64_t n) {
  const double e = to_double(epsilon);
  return std::exp(-2.0 * static_cast<double>(n) * e * e);
}

double power_slice_bound(const std::array<std::int64_t, 3>& dims, const Rational& epsilon, std::int64_t n) {
  if (epsilon < 0) throw InvalidArgument("power_slice_bound: epsilon must be >= 0");
  if (n < 0) throw InvalidArgument("power_slice_bound: n must be >= 0");
  double sum = 0;
  for (auto d : dims) sum += std::pow(static_cast<double>(d), static_cast<double>(n));
  return sum * hoeffding_fraction(epsilon, n);
}

}  // namespace slicerank
