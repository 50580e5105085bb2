#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slicerank/field.hpp"
#include "slicerank/groups.hpp"
#include "slicerank/guards.hpp"

namespace slicerank {

// Axis label: a group element's residues or an opaque token {i}. Labels of a
// tensor product are concatenations (x', x''), which makes D_G ⊗ D_K carry
// exactly the labels of D_{G×K} when coordinates are concatenated.
using Label = std::vector<std::int64_t>;

inline Label label_of(const GroupElement& x) { return x.residues; }
inline GroupElement element_of(const Label& l) { return GroupElement(l); }
std::vector<Label> token_labels(std::size_t n);

enum class Axis : int { x = 0, y = 1, z = 2 };

// 3-dimensional perfect matching: a list of triples whose projection onto
// each coordinate is injective.
template <class T>
struct Matching3 {
  std::vector<std::array<T, 3>> triples;

  std::size_t size() const { return triples.size(); }
  bool projections_injective() const;
  std::vector<T> projection(std::size_t axis) const {
    std::vector<T> out;
    out.reserve(triples.size());
    for (const auto& t : triples) out.push_back(t[axis]);
    return out;
  }
};

template <class T>
bool Matching3<T>::projections_injective() const {
  for (std::size_t a = 0; a < 3; ++a) {
    auto p = projection(a);
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) return false;
  }
  return true;
}

// Dense F_p-valued function on X × Y × Z with labeled axes. Entries are
// row-major over (x, y, z).
class Tensor3 {
 public:
  Tensor3(PrimeField field, std::array<std::vector<Label>, 3> axes, std::vector<Fp> entries);
  // All-zero tensor with the given axes.
  Tensor3(PrimeField field, std::array<std::vector<Label>, 3> axes);

  static Tensor3 from_function(PrimeField field, std::array<std::vector<Label>, 3> axes,
                               const std::function<std::int64_t(std::size_t, std::size_t, std::size_t)>& fn);

  const PrimeField& field() const { return field_; }
  const std::array<std::vector<Label>, 3>& axes() const { return axes_; }
  const std::vector<Label>& axis(std::size_t a) const { return axes_[a]; }
  std::array<std::size_t, 3> dims() const { return {axes_[0].size(), axes_[1].size(), axes_[2].size()}; }
  std::size_t dim(std::size_t a) const { return axes_[a].size(); }
  const std::vector<Fp>& entries() const { return entries_; }

  std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * axes_[1].size() + j) * axes_[2].size() + k;
  }
  Fp at(std::size_t i, std::size_t j, std::size_t k) const { return entries_[offset(i, j, k)]; }
  void set(std::size_t i, std::size_t j, std::size_t k, Fp v) { entries_[offset(i, j, k)] = field_.reduce(v); }

  // Index of a label on an axis; throws InvalidArgument if absent.
  std::size_t index_of(std::size_t axis, const Label& label) const;
  std::size_t support_size() const;
  bool is_zero() const;

  // Equal values on identical axes.
  bool operator==(const Tensor3& other) const = default;

 private:
  PrimeField field_;
  std::array<std::vector<Label>, 3> axes_;
  std::vector<Fp> entries_;
};

// D_H(x, y, z) = 1 iff x + y + z = 0, axes are the group elements in
// lexicographic order.
Tensor3 group_tensor(const GroupSpec& g, std::int64_t p, const Guards& guards = Guards::from_environment());

Tensor3 restrict(const Tensor3& t, std::span<const Label> xs, std::span<const Label> ys, std::span<const Label> zs);

// (F ⊗ G)((x',x''),(y',y''),(z',z'')) = F(x',y',z') G(x'',y'',z''); product
// axes enumerate pairs with the F index most significant.
Tensor3 tensor_product(const Tensor3& f, const Tensor3& g, const Guards& guards = Guards::from_environment());

// The support as a matching when the tensor is a diagonal (support is a
// perfect matching of all three axes), otherwise empty.
std::optional<Matching3<Label>> is_diagonal(const Tensor3& t);

// Shape checks shared by the verifiers.
void require_same_shape(const std::array<std::size_t, 3>& a, const std::array<std::size_t, 3>& b, const char* what);

}  // namespace slicerank
