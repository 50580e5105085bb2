#pragma once

#include <cstdint>
#include <limits>

#include "slicerank/guards.hpp"
#include "slicerank/numeric.hpp"

namespace slicerank {

struct RateQuery {
  std::int64_t m = 1;
  Rational alpha{1, 3};
};

struct RateResult {
  double value = 0;
  // Optimizer location: θ for I, the infimum point x (or z for the limit) for J.
  double argmax_theta = 0;
  double tolerance = 1e-12;
  // Second, independent evaluation where one exists (J(s) by its explicit
  // infimum); NaN otherwise.
  double cross_check = std::numeric_limits<double>::quiet_NaN();
};

// I(m, α) = sup_{θ<0} αθ - log((1 - e^{(1+1/m)θ}) / ((m+1)(1 - e^{θ/m}))),
// maximized over x = e^{θ/m} in (0, 1). Real m > 0 is accepted for J(s).
RateResult rate_I(const RateQuery& q);
RateResult rate_I(double m, double alpha);

// sup_{θ<0} αθ - log((e^θ - 1)/θ), the m → ∞ limit of I(m, α).
RateResult rate_I_limit(double alpha);

// J(s) = e^{-I(s-1, 1/3)}, cross-checked against
// (1/s) inf_{0<x<1} (1 - x^s)/(1 - x) x^{-(s-1)/3}; throws if they differ by
// more than 1e-9.
RateResult rate_J(double s);

// inf_{z>1} (z - z^{-2}) / (3 log z).
RateResult rate_J_limit();
double j_limit_objective(double z);

struct Constants {
  double delta = 0;    // I(1, 1/3)
  double epsilon = 0;  // δ/2
  double delta_closed_form = 0;  // log(2/3) + (2/3) log 2
};
Constants constants();

struct TupleFraction {
  BigInt count;
  Rational fraction;
};

// Tuples a ∈ {0..m}^n with Σ a_i <= α m n, counted exactly. Guarded by
// Guards::dp_cells on n·m·n.
TupleFraction tuple_fraction_exact(std::int64_t m, const Rational& alpha, std::int64_t n,
                                   const Guards& guards = Guards::from_environment());

}  // namespace slicerank
