#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicerank/guards.hpp"
#include "slicerank/linalg.hpp"
#include "slicerank/tensor.hpp"

namespace slicerank {

// One term f(pair) * g(single) of a slice decomposition. `pair` is row-major
// over the two axes it depends on (in x, y, z order); `single` is a function
// of the remaining axis.
struct SliceTerm {
  std::vector<Fp> pair;
  std::vector<Fp> single;
  bool operator==(const SliceTerm&) const = default;
};

// F(x,y,z) = Σ f_i(x,y) g_i(z) + Σ f_i(x,z) g_i(y) + Σ f_i(y,z) g_i(x).
struct SliceDecomposition {
  std::int64_t p = 2;
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::vector<SliceTerm> xy;  // pair on X×Y, single on Z
  std::vector<SliceTerm> xz;  // pair on X×Z, single on Y
  std::vector<SliceTerm> yz;  // pair on Y×Z, single on X

  std::size_t size() const { return xy.size() + xz.size() + yz.size(); }
  bool operator==(const SliceDecomposition&) const = default;
};

// Throws InvalidArgument if any term has the wrong table lengths.
void validate_shape(const SliceDecomposition& d);
std::vector<Fp> reconstruct(const SliceDecomposition& d);
bool verify_slice_decomposition(const Tensor3& t, const SliceDecomposition& d);

// F = Σ_j α_j(x) β_j(y) γ_j(z).
struct RankOneTerm {
  std::vector<Fp> x, y, z;
  bool operator==(const RankOneTerm&) const = default;
};
struct TensorDecomposition {
  std::int64_t p = 2;
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::vector<RankOneTerm> terms;
};

// One rank-one term per nonzero entry.
TensorDecomposition support_expansion(const Tensor3& t);
bool verify_tensor_decomposition(const Tensor3& t, const TensorDecomposition& d);

// r_{abc} = Σ F(x,y,z) ax[a][x] ay[b][y] az[c][z], row-major over (a,b,c).
std::vector<Fp> contract_all(const Tensor3& t, const FpMatrix& ax, const FpMatrix& ay, const FpMatrix& az);

struct ExactRankOptions {
  Guards guards = Guards::from_environment();
  std::size_t threads = 0;
};

struct SliceRankResult {
  std::size_t rank = 0;
  // Subspaces (bases as rows) of F_p^X, F_p^Y, F_p^Z on which F vanishes,
  // with total codimension == rank.
  std::array<FpMatrix, 3> vanishing;
  // Decomposition of exactly `rank` terms built from the subspaces.
  SliceDecomposition decomposition;
};

// Slice rank over F_p: the least a+b+c such that F vanishes on a triple of
// subspaces of codimensions a, b, c. Exhaustive over subspaces of the X and
// Y spaces; the Z subspace is the largest annihilator. Guarded by
// Guards::rank_axis and Guards::rank_prime.
SliceRankResult exact_slice_rank_with_witness(const Tensor3& t, const ExactRankOptions& options = {});
std::size_t exact_slice_rank(const Tensor3& t, const ExactRankOptions& options = {});

// Converts vanishing subspaces into a decomposition with (sum of
// codimensions) terms. Throws InvalidArgument if F does not vanish there.
SliceDecomposition decomposition_from_vanishing(const Tensor3& t, const std::array<FpMatrix, 3>& vanishing);

enum class ProductMode { tensor_rank, max_axis };

// A slice decomposition of F ⊗ G from one of F. In tensor_rank mode G is
// taken from g_terms (or expanded over its support); the result has
// size(dF)·ℓ terms. In max_axis mode each F term is split along delta
// functions of the G axis matching its single factor, giving at most
// size(dF)·max(|X''|,|Y''|,|Z''|) terms. Throws UnverifiedInput when dF does
// not reproduce F.
SliceDecomposition product_slice_decomposition(const Tensor3& f, const SliceDecomposition& df, const Tensor3& g,
                                               ProductMode mode,
                                               const std::optional<TensorDecomposition>& g_terms = std::nullopt);

}  // namespace slicerank
