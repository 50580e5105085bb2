#include "slicerank/numeric.hpp"

#include <cmath>

#include "slicerank/errors.hpp"

namespace slicerank {

Rational parse_rational(std::string_view text) {
  const auto bad = [&] { return ParseError("not a rational number: \"" + std::string(text) + "\""); };
  const auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw bad();
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') throw bad();
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    // Allow terminating decimals such as "0.49".
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text));
    const std::string_view frac = text.substr(dot + 1);
    for (char c : frac)
      if (c < '0' || c > '9') throw bad();
    std::string whole(text.substr(0, dot));
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt digits = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
    BigInt w = parse_int(whole);
    BigInt num = (negative ? -1 : 1) * (boost::multiprecision::abs(w) * scale + digits);
    return Rational(num, scale);
  }
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw bad();
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const BigInt& n) { return n.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const BigInt& n) { return n.convert_to<double>(); }

double log_of(const BigInt& n) {
  if (n <= 0) throw InvalidArgument("log_of: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(n);
  if (bits < 1000) return std::log(n.convert_to<double>());
  const unsigned shift = bits - 60;
  const BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt pow_big(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw InvalidArgument("ceil_div: denominator must be positive");
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

}  // namespace slicerank
