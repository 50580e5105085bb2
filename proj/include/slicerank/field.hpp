#pragma once

#include <cstdint>

namespace slicerank {

using Fp = std::uint32_t;

// Arithmetic in Z/p for a prime p (checked at construction). Values are
// kept reduced in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::int64_t p);

  std::uint32_t p() const { return p_; }

  Fp reduce(std::int64_t v) const {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Fp>(r < 0 ? r + p_ : r);
  }
  Fp add(Fp a, Fp b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const { return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_); }
  Fp pow(Fp a, std::uint64_t e) const;
  // Throws InvalidArgument on zero.
  Fp inv(Fp a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

// binomial(m, k) mod p via base-p digits (Lucas).
Fp lucas_binom(std::uint64_t m, std::uint64_t k, std::int64_t p);

}  // namespace slicerank
