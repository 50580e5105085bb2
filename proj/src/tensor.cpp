#include "slicerank/tensor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "slicerank/errors.hpp"

namespace slicerank {

std::vector<Label> token_labels(std::size_t n) {
  std::vector<Label> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<std::int64_t>(i)});
  return out;
}

namespace {

void require_distinct(const std::array<std::vector<Label>, 3>& axes) {
  for (std::size_t a = 0; a < 3; ++a) {
    std::set<Label> seen(axes[a].begin(), axes[a].end());
    if (seen.size() != axes[a].size()) throw InvalidArgument("tensor axis " + std::to_string(a) + " has repeated labels");
  }
}

}  // namespace

Tensor3::Tensor3(PrimeField field, std::array<std::vector<Label>, 3> axes, std::vector<Fp> entries)
    : field_(field), axes_(std::move(axes)), entries_(std::move(entries)) {
  require_distinct(axes_);
  const std::size_t n = axes_[0].size() * axes_[1].size() * axes_[2].size();
  if (entries_.size() != n)
    throw InvalidArgument("tensor has " + std::to_string(entries_.size()) + " entries, expected " + std::to_string(n));
  for (auto& v : entries_)
    if (v >= field_.p()) throw InvalidArgument("tensor entry out of range for F_" + std::to_string(field_.p()));
}

Tensor3::Tensor3(PrimeField field, std::array<std::vector<Label>, 3> axes)
    : field_(field), axes_(std::move(axes)) {
  require_distinct(axes_);
  entries_.assign(axes_[0].size() * axes_[1].size() * axes_[2].size(), 0);
}

Tensor3 Tensor3::from_function(PrimeField field, std::array<std::vector<Label>, 3> axes,
                               const std::function<std::int64_t(std::size_t, std::size_t, std::size_t)>& fn) {
  Tensor3 t(field, std::move(axes));
  const auto d = t.dims();
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) t.entries_[t.offset(i, j, k)] = field.reduce(fn(i, j, k));
  return t;
}

std::size_t Tensor3::index_of(std::size_t axis, const Label& label) const {
  const auto& ax = axes_.at(axis);
  const auto it = std::find(ax.begin(), ax.end(), label);
  if (it == ax.end()) {
    std::string s;
    for (auto v : label) s += (s.empty() ? "" : ",") + std::to_string(v);
    throw InvalidArgument("label (" + s + ") not on axis " + std::to_string(axis));
  }
  return static_cast<std::size_t>(it - ax.begin());
}

std::size_t Tensor3::support_size() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](Fp v) { return v != 0; }));
}

bool Tensor3::is_zero() const { return support_size() == 0; }

Tensor3 group_tensor(const GroupSpec& g, std::int64_t p, const Guards& guards) {
  const PrimeField field(p);
  const std::size_t n = g.small_order(guards.element_enumeration);
  if (n != 0 && (n > guards.tensor_entries / n || n * n > guards.tensor_entries / n))
    throw GuardExceeded("D_H for " + g.to_string() + " needs |H|^3 = " + std::to_string(n) + "^3 entries, cap is " +
                        std::to_string(guards.tensor_entries));
  const auto elems = g.elements(guards.element_enumeration);
  std::vector<Label> labels;
  labels.reserve(n);
  for (const auto& e : elems) labels.push_back(label_of(e));
  Tensor3 t(field, {labels, labels, labels});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = element_neg(g, element_add(g, elems[i], elems[j]));
      t.set(i, j, g.index_of(z), 1);
    }
  return t;
}

Tensor3 restrict(const Tensor3& t, std::span<const Label> xs, std::span<const Label> ys, std::span<const Label> zs) {
  std::array<std::vector<std::size_t>, 3> idx;
  const std::array<std::span<const Label>, 3> wanted{xs, ys, zs};
  std::array<std::vector<Label>, 3> axes;
  for (std::size_t a = 0; a < 3; ++a) {
    for (const auto& l : wanted[a]) idx[a].push_back(t.index_of(a, l));
    axes[a].assign(wanted[a].begin(), wanted[a].end());
  }
  Tensor3 out(t.field(), std::move(axes));
  for (std::size_t i = 0; i < idx[0].size(); ++i)
    for (std::size_t j = 0; j < idx[1].size(); ++j)
      for (std::size_t k = 0; k < idx[2].size(); ++k) out.set(i, j, k, t.at(idx[0][i], idx[1][j], idx[2][k]));
  return out;
}

Tensor3 tensor_product(const Tensor3& f, const Tensor3& g, const Guards& guards) {
  if (!(f.field() == g.field())) throw InvalidArgument("tensor_product: field mismatch");
  const auto df = f.dims(), dg = g.dims();
  std::size_t total = 1;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t n = df[a] * dg[a];
    if (n != 0 && total > guards.tensor_entries / n)
      throw GuardExceeded("tensor_product result exceeds the dense entry cap");
    total *= n;
  }
  std::array<std::vector<Label>, 3> axes;
  for (std::size_t a = 0; a < 3; ++a)
    for (const auto& l1 : f.axis(a))
      for (const auto& l2 : g.axis(a)) {
        Label l = l1;
        l.insert(l.end(), l2.begin(), l2.end());
        axes[a].push_back(std::move(l));
      }
  Tensor3 out(f.field(), std::move(axes));
  const auto& field = f.field();
  for (std::size_t i1 = 0; i1 < df[0]; ++i1)
    for (std::size_t j1 = 0; j1 < df[1]; ++j1)
      for (std::size_t k1 = 0; k1 < df[2]; ++k1) {
        const Fp a = f.at(i1, j1, k1);
        if (a == 0) continue;
        for (std::size_t i2 = 0; i2 < dg[0]; ++i2)
          for (std::size_t j2 = 0; j2 < dg[1]; ++j2)
            for (std::size_t k2 = 0; k2 < dg[2]; ++k2)
              out.set(i1 * dg[0] + i2, j1 * dg[1] + j2, k1 * dg[2] + k2, field.mul(a, g.at(i2, j2, k2)));
      }
  return out;
}

std::optional<Matching3<Label>> is_diagonal(const Tensor3& t) {
  const auto d = t.dims();
  if (d[0] != d[1] || d[1] != d[2]) return std::nullopt;
  Matching3<Label> m;
  std::array<std::vector<bool>, 3> used{std::vector<bool>(d[0]), std::vector<bool>(d[1]), std::vector<bool>(d[2])};
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        if (t.at(i, j, k) == 0) continue;
        if (used[0][i] || used[1][j] || used[2][k]) return std::nullopt;
        used[0][i] = used[1][j] = used[2][k] = true;
        m.triples.push_back({t.axis(0)[i], t.axis(1)[j], t.axis(2)[k]});
      }
  if (m.size() != d[0]) return std::nullopt;
  return m;
}

void require_same_shape(const std::array<std::size_t, 3>& a, const std::array<std::size_t, 3>& b, const char* what) {
  if (a != b)
    throw InvalidArgument(std::string(what) + ": shape mismatch (" + std::to_string(a[0]) + "x" + std::to_string(a[1]) +
                          "x" + std::to_string(a[2]) + " vs " + std::to_string(b[0]) + "x" + std::to_string(b[1]) + "x" +
                          std::to_string(b[2]) + ")");
}

}  // namespace slicerank
