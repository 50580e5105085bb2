#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "slicerank/groups.hpp"
#include "slicerank/guards.hpp"
#include "slicerank/tensor.hpp"

namespace slicerank {

using ElementMatching = Matching3<GroupElement>;

struct TricoloredSumFreeSet {
  GroupSpec group;
  ElementMatching matching;
};

struct BorderSumFreeSet {
  GroupSpec group;
  ElementMatching matching;
  std::map<GroupElement, std::int64_t> alpha, beta, gamma;

  // max |α(s)|, |β(t)|, |γ(u)| over the matching's projections.
  std::int64_t range() const;
};

struct SumFreeVerdict {
  bool valid = false;
  std::string reason;
  std::optional<std::array<GroupElement, 3>> violation;
};

// Throws InvalidArgument when an element does not conform to the group or a
// projection of the matching repeats an element.
void require_well_formed(const GroupSpec& g, const ElementMatching& m);

// Checks s+t+u = 0 on M and s+t+u ≠ 0 on (S×T×U) \ M; the first offending
// triple in (i, j, k) order over the matching's listing is reported.
SumFreeVerdict verify_sumfree(const TricoloredSumFreeSet& s);
// On M: s+t+u = 0 and α+β+γ = 0. Off M: s+t+u ≠ 0 or α+β+γ > 0.
SumFreeVerdict verify_border(const BorderSumFreeSet& b);

struct SumFreeSearchOptions {
  Guards guards = Guards::from_environment();
  std::size_t threads = 0;
};

struct SumFreeSearchResult {
  std::size_t size = 0;
  // Lexicographically least maximum matching (triples sorted by element
  // index of s, then t).
  TricoloredSumFreeSet witness;
  std::uint64_t nodes = 0;
};

// Largest tricolored sum-free set, by exhaustive branch and bound. Guarded by
// Guards::sumfree_order on |H|.
SumFreeSearchResult max_sumfree_exhaustive(const GroupSpec& g, const SumFreeSearchOptions& options = {});

struct TheoremBounds {
  // 3 |H|^{1-ε/m}, m the largest prime power in the primary decomposition
  // (the smallest order bound for a generating set).
  double thm_a = 0;
  std::int64_t generator_order = 1;
  // 3 |H|^{1-δ/log q} when H ≅ (Z/q)^n with q a prime power.
  std::optional<double> thm_a_prime;
  // 3 |H| J(q)^n for the largest primary block (Z/q)^n.
  std::optional<double> thm_zm;
  std::optional<PrimaryBlock> block;
};

TheoremBounds theorem_bound(const GroupSpec& g);

}  // namespace slicerank
