#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "slicerank/guards.hpp"
#include "slicerank/numeric.hpp"

namespace slicerank {

// Number of n-tuples drawn (with repetition) from the weight multiset whose
// weight sum is at most n·threshold. Exact; the comparison is done on
// cleared denominators.
BigInt weighted_tuple_count(const std::vector<std::int64_t>& weights, std::int64_t n, const Rational& threshold,
                            const Guards& guards = Guards::from_environment());

struct PowerBound {
  BigInt count;        // #{a ∈ {0..k-1}^n : 3 Σ a_i <= (k-1) n}
  BigInt bound;        // 3 · count
  double asymptotic;   // 3 (k J(k))^n
};

// Slice rank bound for the n-th tensor power of a tensor with triangle rank
// at most k on axes of size k.
PowerBound triangle_to_slice_power_bound(std::int64_t k, std::int64_t n,
                                         const Guards& guards = Guards::from_environment());

// (|X|^n + |Y|^n + |Z|^n) e^{-2 n ε²}.
double power_slice_bound(const std::array<std::int64_t, 3>& dims, const Rational& epsilon, std::int64_t n);

// e^{-2 n ε²}.
double hoeffding_fraction(const Rational& epsilon, std::int64_t n);

}  // namespace slicerank
