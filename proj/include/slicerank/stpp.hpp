#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "slicerank/groups.hpp"
#include "slicerank/guards.hpp"
#include "slicerank/numeric.hpp"
#include "slicerank/sumfree.hpp"

namespace slicerank {

struct STPPTriple {
  std::vector<GroupElement> a, b, c;
};

struct STPPConstruction {
  GroupSpec group;
  std::vector<STPPTriple> triples;
};

// Throws InvalidArgument on non-conforming elements or repeated list entries.
void require_well_formed(const STPPConstruction& c);

struct StppVerdict {
  bool valid = false;
  std::string reason;
};

// a+b+c = 0 with a ∈ A-A, b ∈ B-B, c ∈ C-C only for a = b = c = 0; also
// checks the consequence |A-B| = |A||B|.
StppVerdict verify_tpp(const GroupSpec& g, const std::vector<GroupElement>& a, const std::vector<GroupElement>& b,
                       const std::vector<GroupElement>& c);
// Every triple is a TPP and s_i + t_j + u_k = 0 forces i = j = k.
StppVerdict verify_stpp(const STPPConstruction& c);

struct PackingReport {
  BigInt sum_ab, sum_bc, sum_ca;  // Σ|A||B|, Σ|B||C|, Σ|C||A|
  double c_ab = 0, c_bc = 0, c_ca = 0;  // log(sum) / log|H|
};
// Empty when |H| = 1.
std::optional<PackingReport> packing_report(const STPPConstruction& c);

struct OmegaReport {
  double omega_bound = 3;  // clamped to [2, 3]
  double omega_raw = 3;    // bisection value before clamping below at 2
  bool clamped = false;
  bool capped = false;     // ω = 3 already satisfies the inequality
  std::string warning;
  std::optional<std::array<double, 3>> packing_exponents;
  std::optional<double> epsilon_pack;  // (1 - min exponent) / 3
  std::optional<double> omega_floor;   // 2 / (1 - ε_pack)
};

// Largest ω in [2, 3] with Σ P_i^{ω/3} <= |H|. Throws InvalidArgument
// ("inequality vacuous") when |H| < 2 or every product is <= 1.
OmegaReport omega_bound_from_products(const std::vector<BigInt>& products, const BigInt& order);
// As above from (|A|, |B|, |C|) sizes; also fills the packing diagnostics.
OmegaReport omega_bound_from_sizes(const std::vector<std::array<BigInt, 3>>& sizes, const BigInt& order);
OmegaReport omega_bound(const STPPConstruction& c);

// Σ |A||B||C| / (|A| + |B| + |C|).
Rational border_lower_bound(const STPPConstruction& c);

// Border set from a verified STPP: list positions give the bijections to
// [n], [m], [p] (1-based), r_i is the most frequent value of x+y+z (smallest
// on ties). Throws UnverifiedInput when the construction fails verify_stpp.
BorderSumFreeSet border_from_stpp(const STPPConstruction& c);

struct UnborderResult {
  TricoloredSumFreeSet set;  // in H^N
  std::array<std::int64_t, 3> level{0, 0, 0};  // (α*, β*, γ*)
  std::int64_t range = 0;
  BigInt guaranteed;  // ⌈|M|^N / (2Nt+1)^3⌉
};

// N-fold power with additive weights, restricted to the most common weight
// triple (lexicographically least among ties). Guarded by
// Guards::power_matching on |M|^N.
UnborderResult unborder(const BorderSumFreeSet& b, std::size_t n_power,
                        const Guards& guards = Guards::from_environment());

using Distribution = std::vector<std::int64_t>;  // occurrences of each triple index

struct SymbolicSTPP {
  STPPConstruction base;
  std::size_t power = 1;  // N; the construction lives in H^{3N}
  std::array<Distribution, 3> mu;
  BigInt size_a, size_b, size_c;  // |Â|, |B̂|, |Ĉ| for every selected (u,v,w)
  BigInt triples;                  // number of selected (u, v, w)
  // Σ over selected triples of |Â||B̂|, |B̂||Ĉ|, |Ĉ||Â|.
  std::array<BigInt, 3> packing_sums;
  // Product of the three restricted packing sums in the μ choice.
  BigInt objective;
  BigInt loss_factor;  // (N+1)^{3n}
};

// Σ_{u ∼ μ} ∏_ℓ x_{u_ℓ} for per-index factors x (multinomial times powers).
BigInt distribution_weight(const Distribution& mu, const std::vector<BigInt>& factors);
// Every distribution of N over n indices, lexicographic.
std::vector<Distribution> distributions(std::size_t n, std::size_t total, const Guards& guards);

// Chooses μ1, μ2, μ3 maximizing the product of the restricted packing sums
// (each factor independently, lexicographically least on ties). Guarded by
// Guards::distributions on (N+1)^n.
SymbolicSTPP uniformize(const STPPConstruction& c, std::size_t n_power,
                        const Guards& guards = Guards::from_environment());

// Index sequences (u, v, w) with the selected distributions.
using IndexTriple = std::array<std::vector<std::size_t>, 3>;
IndexTriple sample_indices(const SymbolicSTPP& s, std::mt19937_64& rng);
// Â (which = 0), B̂ (1) or Ĉ (2) for the given indices.
GroupElement sample_member(const SymbolicSTPP& s, int which, const IndexTriple& idx, std::mt19937_64& rng);
bool contains(const SymbolicSTPP& s, int which, const IndexTriple& idx, const GroupElement& x);

// Randomized check of the simultaneous condition
// -a + a' - b + b' - c + c' = 0 ⟺ (I = J = K and a = a', b = b', c = c')
// on sampled members; returns the number of failing trials.
std::size_t spot_check(const SymbolicSTPP& s, std::mt19937_64& rng, std::size_t trials);

struct GrowOptions {
  std::size_t max_triples = 3;
  std::size_t max_set_size = 3;
  std::size_t attempts = 200;
};

// Random greedy search for a verified STPP in g; falls back to the single
// triple ({0}, {0}, {0}) when nothing larger is accepted.
STPPConstruction grow_stpp(const GroupSpec& g, std::mt19937_64& rng, const GrowOptions& options = {});

}  // namespace slicerank
