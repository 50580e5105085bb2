#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace slicerank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "-p", "p/q" (q != 0).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

double to_double(const Rational& r);
double to_double(const BigInt& n);
// Natural log of a positive big integer, accurate far beyond double range.
double log_of(const BigInt& n);

BigInt pow_big(const BigInt& base, unsigned exponent);
BigInt ceil_div(const BigInt& num, const BigInt& den);

}  // namespace slicerank
