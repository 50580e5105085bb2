#include "slicerank/field.hpp"

#include <string>
#include <vector>

#include "slicerank/errors.hpp"
#include "slicerank/groups.hpp"

namespace slicerank {

PrimeField::PrimeField(std::int64_t p) {
  if (!is_prime(p) || p > (std::int64_t{1} << 31))
    throw InvalidArgument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  p_ = static_cast<std::uint32_t>(p);
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  Fp result = 1 % p_;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fp PrimeField::inv(Fp a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

Fp lucas_binom(std::uint64_t m, std::uint64_t k, std::int64_t p) {
  const PrimeField f(p);
  const auto base = static_cast<std::uint64_t>(p);
  Fp result = 1 % f.p();
  while (k > 0 || m > 0) {
    const std::uint64_t md = m % base, kd = k % base;
    if (kd > md) return 0;
    // C(md, kd) mod p = md! / (kd! (md-kd)!) with all factors < p.
    Fp num = 1, den = 1;
    for (std::uint64_t i = 0; i < kd; ++i) {
      num = f.mul(num, static_cast<Fp>(md - i));
      den = f.mul(den, static_cast<Fp>(i + 1));
    }
    result = f.mul(result, f.mul(num, f.inv(den)));
    m /= base;
    k /= base;
  }
  return result;
}

}  // namespace slicerank
