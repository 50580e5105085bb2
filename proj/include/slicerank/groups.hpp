#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicerank/guards.hpp"
#include "slicerank/numeric.hpp"

namespace slicerank {

struct CyclicFactor {
  std::int64_t modulus = 2;
  std::int64_t multiplicity = 1;
  auto operator<=>(const CyclicFactor&) const = default;
};

// Residue vector, one entry per cyclic coordinate of its GroupSpec.
struct GroupElement {
  std::vector<std::int64_t> residues;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> r) : residues(std::move(r)) {}
  GroupElement(std::initializer_list<std::int64_t> r) : residues(r) {}

  std::size_t size() const { return residues.size(); }
  auto operator<=>(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& x);

// Finite abelian group written as a product of cyclic groups Z/m. Always
// held in canonical form: factors sorted by modulus, equal moduli merged,
// zero multiplicities dropped. An empty factor list is the trivial group.
class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<CyclicFactor> factors);

  static GroupSpec cyclic(std::int64_t modulus, std::int64_t multiplicity = 1);

  const std::vector<CyclicFactor>& factors() const { return factors_; }
  // One modulus per cyclic coordinate, in coordinate order.
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }

  BigInt order() const;
  double log_order() const;
  // order() as a machine integer; throws GuardExceeded if it exceeds `cap`.
  std::size_t small_order(std::size_t cap) const;
  bool is_trivial() const { return factors_.empty(); }

  GroupElement zero() const;
  bool conforms(const GroupElement& x) const;
  void require_conforming(const GroupElement& x) const;

  // Lexicographic order over residue vectors (first coordinate most
  // significant).
  std::vector<GroupElement> elements(std::size_t cap) const;
  std::size_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::size_t index) const;

  std::string to_string() const;

  bool operator==(const GroupSpec& other) const { return factors_ == other.factors_; }

 private:
  std::vector<CyclicFactor> factors_;
  std::vector<std::int64_t> moduli_;
};

GroupSpec parse_group_spec(std::string_view text);

GroupElement element_add(const GroupSpec& g, const GroupElement& x, const GroupElement& y);
GroupElement element_sub(const GroupSpec& g, const GroupElement& x, const GroupElement& y);
GroupElement element_neg(const GroupSpec& g, const GroupElement& x);

std::int64_t exponent(const GroupSpec& g);

// Direct product of several groups together with the coordinate map that
// places component j's coordinate c at position positions[j][c] of the
// canonical product. combine/split transport elements across it.
class ProductLayout {
 public:
  explicit ProductLayout(std::vector<GroupSpec> components);
  static ProductLayout power(const GroupSpec& g, std::size_t copies);

  const GroupSpec& product() const { return product_; }
  const std::vector<GroupSpec>& components() const { return components_; }

  GroupElement combine(std::span<const GroupElement> parts) const;
  std::vector<GroupElement> split(const GroupElement& x) const;

 private:
  std::vector<GroupSpec> components_;
  GroupSpec product_;
  std::vector<std::vector<std::size_t>> positions_;
};

// One block (Z/q)^n of the primary decomposition, q = prime^k.
struct PrimaryBlock {
  std::int64_t prime = 2;
  std::int64_t prime_power = 2;
  std::int64_t count = 1;
  bool operator==(const PrimaryBlock&) const = default;
};

// H ≅ ∏ (Z/q_i)^{n_i} via the Chinese remainder theorem, with an explicit
// coordinate isomorphism to the canonical GroupSpec of the primary form.
class PrimaryDecomposition {
 public:
  // Blocks ordered by (prime, prime_power).
  const std::vector<PrimaryBlock>& blocks() const { return blocks_; }
  const GroupSpec& source() const { return source_; }
  const GroupSpec& primary() const { return primary_; }

  GroupElement to_primary(const GroupElement& x) const;
  GroupElement from_primary(const GroupElement& y) const;

 private:
  friend PrimaryDecomposition crt_primary_decomposition(const GroupSpec& g);

  struct Target {
    std::size_t coordinate;
    std::int64_t modulus;
  };
  GroupSpec source_;
  GroupSpec primary_;
  std::vector<PrimaryBlock> blocks_;
  // For each source coordinate, the primary coordinates it maps onto.
  std::vector<std::vector<Target>> targets_;
};

PrimaryDecomposition crt_primary_decomposition(const GroupSpec& g);

// Block with the largest count; ties go to the smallest prime power.
// The trivial group yields {1, 1, 0}.
PrimaryBlock largest_primary_block(const GroupSpec& g);

// Factorization of a positive integer as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
bool is_prime(std::int64_t n);
// (p, r) when n = p^r with r >= 1, otherwise {0, 0}.
std::pair<std::int64_t, int> prime_power_parts(std::int64_t n);
// Number of prime powers q with 2 <= q <= m.
std::int64_t prime_power_count(std::int64_t m);

// Every abelian group of order n up to isomorphism (as products of cyclic
// prime-power groups), in a deterministic order.
std::vector<GroupSpec> abelian_groups_of_order(std::int64_t n);

}  // namespace slicerank
