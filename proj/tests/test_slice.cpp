#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "slicerank/errors.hpp"
#include "slicerank/slice.hpp"
#include "slicerank/tensor.hpp"

using namespace slicerank;

namespace {

Tensor3 diagonal(std::size_t n, std::int64_t p) {
  const auto l = token_labels(n);
  return Tensor3::from_function(PrimeField(p), {l, l, l},
                                [](std::size_t i, std::size_t j, std::size_t k) { return i == j && j == k; });
}

Tensor3 delta_xy(std::size_t n, std::int64_t p) {
  const auto l = token_labels(n);
  return Tensor3::from_function(PrimeField(p), {l, l, l}, [](std::size_t i, std::size_t j, std::size_t) { return i == j; });
}

Tensor3 random_tensor(std::array<std::size_t, 3> d, std::int64_t p, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution nonzero(density);
  std::uniform_int_distribution<std::int64_t> value(1, p - 1);
  return Tensor3::from_function(PrimeField(p), {token_labels(d[0]), token_labels(d[1]), token_labels(d[2])},
                                [&](std::size_t, std::size_t, std::size_t) { return nonzero(rng) ? value(rng) : 0; });
}

// Applies an invertible change of coordinates on the x axis.
Tensor3 transform_x(const Tensor3& t, const FpMatrix& a) {
  const auto& f = t.field();
  const auto d = t.dims();
  return Tensor3::from_function(f, t.axes(), [&](std::size_t i, std::size_t j, std::size_t k) {
    std::int64_t s = 0;
    for (std::size_t x = 0; x < d[0]; ++x) s += static_cast<std::int64_t>(a.at(i, x)) * t.at(x, j, k);
    return s;
  });
}

// t(y, z, x) ↦ permuted axes.
Tensor3 rotate(const Tensor3& t) {
  return Tensor3::from_function(t.field(), {t.axis(1), t.axis(2), t.axis(0)},
                                [&](std::size_t j, std::size_t k, std::size_t i) { return t.at(i, j, k); });
}

}  // namespace

TEST(Tensor, GroupTensorZ2Support) {
  const auto t = group_tensor(GroupSpec::cyclic(2), 2);
  std::set<std::array<std::size_t, 3>> support;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        if (t.at(i, j, k)) support.insert({i, j, k});
  EXPECT_EQ(support, (std::set<std::array<std::size_t, 3>>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
}

TEST(Tensor, GroupTensorZ3Entries) {
  const auto t = group_tensor(GroupSpec::cyclic(3), 3);
  EXPECT_EQ(t.at(1, 1, 1), 1u);
  EXPECT_EQ(t.at(1, 1, 0), 0u);
  for (const char* spec : {"Z4", "Z2^2", "Z6", "Z3 x Z2"}) {
    const auto g = parse_group_spec(spec);
    const std::size_t n = g.small_order(100);
    EXPECT_EQ(group_tensor(g, 2).support_size(), n * n);
  }
}

TEST(Tensor, RestrictToDiagonal) {
  const auto t = group_tensor(GroupSpec::cyclic(3), 3);
  EXPECT_EQ(restrict(t, t.axis(0), t.axis(1), t.axis(2)), t);
  const std::vector<Label> s{{0}, {1}};
  const auto r = restrict(t, s, s, s);
  const auto m = is_diagonal(r);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->size(), 2u);
  const auto empty = restrict(t, std::vector<Label>{}, s, s);
  EXPECT_EQ(exact_slice_rank(empty), 0u);
}

TEST(Tensor, ProductMatchesProductGroup) {
  const auto d2 = group_tensor(GroupSpec::cyclic(2), 2);
  const auto prod = tensor_product(d2, d2);
  // Concatenated labels of Z2 ⊗ Z2 are exactly the residue vectors of Z2^2.
  EXPECT_EQ(prod, group_tensor(parse_group_spec("Z2^2"), 2));
  const Tensor3 one(PrimeField(2), {token_labels(1), token_labels(1), token_labels(1)}, {1});
  const auto id = tensor_product(d2, one);
  EXPECT_EQ(id.entries(), d2.entries());
  EXPECT_TRUE(tensor_product(Tensor3(PrimeField(2), d2.axes()), d2).is_zero());
}

TEST(Tensor, ProductAssociative) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_tensor({2, 1, 2}, 3, rng), b = random_tensor({1, 2, 2}, 3, rng), c = random_tensor({2, 2, 1}, 3, rng);
    EXPECT_EQ(tensor_product(tensor_product(a, b), c).entries(), tensor_product(a, tensor_product(b, c)).entries());
  }
}

TEST(Tensor, IsDiagonal) {
  EXPECT_EQ(is_diagonal(diagonal(3, 2))->size(), 3u);
  EXPECT_FALSE(is_diagonal(group_tensor(GroupSpec::cyclic(2), 2)).has_value());
  auto t = diagonal(3, 3);
  t.set(1, 1, 1, 0);
  EXPECT_FALSE(is_diagonal(t).has_value());
}

TEST(Tensor, RejectsBadConstruction) {
  EXPECT_THROW(Tensor3(PrimeField(2), {token_labels(2), token_labels(2), token_labels(2)}, {0, 1}), InvalidArgument);
  EXPECT_THROW(Tensor3(PrimeField(2), {std::vector<Label>{{0}, {0}}, token_labels(1), token_labels(1)}), InvalidArgument);
}

TEST(SliceDecomposition, DeltaXYHasOneTerm) {
  const auto t = delta_xy(3, 3);
  SliceDecomposition d;
  d.p = 3;
  d.dims = {3, 3, 3};
  d.xy.push_back({{1, 0, 0, 0, 1, 0, 0, 0, 1}, {1, 1, 1}});
  EXPECT_TRUE(verify_slice_decomposition(t, d));
}

TEST(SliceDecomposition, EmptyVerifiesZero) {
  const Tensor3 zero(PrimeField(2), {token_labels(2), token_labels(3), token_labels(2)});
  SliceDecomposition d;
  d.dims = {2, 3, 2};
  EXPECT_TRUE(verify_slice_decomposition(zero, d));
}

TEST(SliceDecomposition, DroppingTermFails) {
  const auto t = group_tensor(GroupSpec::cyclic(2), 2);
  const auto r = exact_slice_rank_with_witness(t);
  ASSERT_TRUE(verify_slice_decomposition(t, r.decomposition));
  ASSERT_GT(r.decomposition.size(), 0u);
  auto d = r.decomposition;
  if (!d.xy.empty())
    d.xy.pop_back();
  else if (!d.xz.empty())
    d.xz.pop_back();
  else
    d.yz.pop_back();
  EXPECT_FALSE(verify_slice_decomposition(t, d));
}

TEST(SliceDecomposition, ShapeMismatchThrows) {
  SliceDecomposition d;
  d.dims = {2, 2, 2};
  EXPECT_THROW(verify_slice_decomposition(diagonal(3, 2), d), InvalidArgument);
  d.xy.push_back({{1, 0}, {1, 1}});
  EXPECT_THROW(validate_shape(d), InvalidArgument);
}

TEST(SliceRank, Diagonals) {
  for (std::int64_t p : {2, 3})
    for (std::size_t n : {1, 2, 3}) EXPECT_EQ(exact_slice_rank(diagonal(n, p)), n) << n << " " << p;
}

TEST(SliceRank, SmallExamples) {
  EXPECT_EQ(exact_slice_rank(delta_xy(3, 3)), 1u);
  EXPECT_EQ(exact_slice_rank(Tensor3(PrimeField(2), {token_labels(2), token_labels(2), token_labels(2)})), 0u);
  // D_{Z2} over F_2 is x + y + z + 1 after relabeling: slice rank 2.
  EXPECT_EQ(exact_slice_rank(group_tensor(GroupSpec::cyclic(2), 2)), 2u);
  EXPECT_EQ(exact_slice_rank(group_tensor(GroupSpec::cyclic(3), 3)), 3u);
  EXPECT_THROW(exact_slice_rank(diagonal(5, 2)), GuardExceeded);
  EXPECT_THROW(exact_slice_rank(diagonal(2, 5)), GuardExceeded);
}

TEST(SliceRank, WitnessMatchesRankAndVanishes) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t p = trial % 2 ? 3 : 2;
    const auto i = static_cast<std::size_t>(trial);
    const std::array<std::size_t, 3> d{1 + i % 3, 1 + i / 3 % 3, 1 + i / 9 % 3};
    const auto t = random_tensor(d, p, rng, 0.3);
    const auto r = exact_slice_rank_with_witness(t);
    EXPECT_EQ(r.decomposition.size(), r.rank);
    EXPECT_TRUE(verify_slice_decomposition(t, r.decomposition));
    std::size_t codim = 0;
    for (std::size_t a = 0; a < 3; ++a) codim += d[a] - r.vanishing[a].rows;
    EXPECT_EQ(codim, r.rank);
    EXPECT_EQ(decomposition_from_vanishing(t, r.vanishing).size(), r.rank);
    // Upper bounds: min axis, min flattening rank, support size.
    EXPECT_LE(r.rank, *std::min_element(d.begin(), d.end()));
    for (std::size_t a = 0; a < 3; ++a) EXPECT_LE(r.rank, oracle::flattening_rank(t, a));
    EXPECT_LE(r.rank, t.support_size());
    EXPECT_EQ(support_expansion(t).terms.size(), t.support_size());
    EXPECT_TRUE(verify_tensor_decomposition(t, support_expansion(t)));
  }
}

TEST(SliceRank, InvariantUnderSymmetries) {
  std::mt19937_64 rng(23);
  const PrimeField f(3);
  for (int trial = 0; trial < 15; ++trial) {
    const auto t = random_tensor({3, 3, 2}, 3, rng, 0.4);
    const auto r = exact_slice_rank(t);
    EXPECT_EQ(exact_slice_rank(rotate(t)), r);
    FpMatrix a(3, 3);
    do {
      for (auto& v : a.data) v = static_cast<Fp>(rng() % 3);
    } while (!inverse(f, a));
    EXPECT_EQ(exact_slice_rank(transform_x(t, a)), r);
  }
}

TEST(SliceRank, RestrictionNeverIncreases) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    const auto t = random_tensor({3, 3, 3}, 2, rng, 0.5);
    const std::vector<Label> sub{{0}, {2}};
    EXPECT_LE(exact_slice_rank(restrict(t, sub, t.axis(1), sub)), exact_slice_rank(t));
  }
}

TEST(SliceRank, MatchingBoundedBySliceRank) {
  // Every diagonal restriction of D_H has size at most slicerank(D_H).
  for (const char* g : {"Z2", "Z3", "Z4", "Z2^2"}) {
    const auto group = parse_group_spec(g);
    const std::int64_t p = group.moduli()[0] == 3 ? 3 : 2;
    const auto t = group_tensor(group, p);
    const auto rank = exact_slice_rank(t);
    const auto& labels = t.axis(0);
    const std::size_t n = labels.size();
    for (std::uint32_t ms = 1; ms < (1u << n); ++ms)
      for (std::uint32_t mt = 1; mt < (1u << n); ++mt)
        for (std::uint32_t mu = 1; mu < (1u << n); ++mu) {
          std::vector<Label> s, tt, u;
          for (std::size_t i = 0; i < n; ++i) {
            if (ms >> i & 1) s.push_back(labels[i]);
            if (mt >> i & 1) tt.push_back(labels[i]);
            if (mu >> i & 1) u.push_back(labels[i]);
          }
          if (const auto m = is_diagonal(restrict(t, s, tt, u))) {
            EXPECT_LE(m->size(), rank) << g;
          }
        }
  }
}

TEST(ProductDecomposition, MaxAxisDeltaTimesDZ2) {
  const auto f = delta_xy(2, 2);
  const auto df = exact_slice_rank_with_witness(f).decomposition;
  ASSERT_EQ(df.size(), 1u);
  const auto g = group_tensor(GroupSpec::cyclic(2), 2);
  const auto d = product_slice_decomposition(f, df, g, ProductMode::max_axis);
  EXPECT_LE(d.size(), 2u);
  EXPECT_TRUE(verify_slice_decomposition(tensor_product(f, g), d));
}

TEST(ProductDecomposition, IdentityFactor) {
  const auto f = diagonal(2, 3);
  const auto df = exact_slice_rank_with_witness(f).decomposition;
  const Tensor3 one(PrimeField(3), {token_labels(1), token_labels(1), token_labels(1)}, {1});
  for (auto mode : {ProductMode::tensor_rank, ProductMode::max_axis}) {
    const auto d = product_slice_decomposition(f, df, one, mode);
    EXPECT_EQ(d.size(), df.size());
    EXPECT_TRUE(verify_slice_decomposition(tensor_product(f, one), d));
  }
}

TEST(ProductDecomposition, RestrictedDZ3TimesDZ2) {
  const auto d3 = group_tensor(GroupSpec::cyclic(3), 2);
  const std::vector<Label> s{{0}, {1}};
  const auto f = restrict(d3, s, s, s);
  const auto df = exact_slice_rank_with_witness(f).decomposition;
  EXPECT_EQ(df.size(), 2u);
  const auto g = group_tensor(GroupSpec::cyclic(2), 2);
  const auto terms = support_expansion(g);
  EXPECT_EQ(terms.terms.size(), 4u);
  const auto d = product_slice_decomposition(f, df, g, ProductMode::tensor_rank, terms);
  EXPECT_LE(d.size(), 8u);
  EXPECT_TRUE(verify_slice_decomposition(tensor_product(f, g), d));
}

TEST(ProductDecomposition, RejectsUnverifiedInput) {
  const auto f = diagonal(2, 2);
  SliceDecomposition bad;
  bad.p = 2;
  bad.dims = {2, 2, 2};
  EXPECT_THROW(product_slice_decomposition(f, bad, f, ProductMode::max_axis), UnverifiedInput);
}

TEST(ProductDecomposition, RandomInstancesVerify) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t p = trial % 2 ? 3 : 2;
    const auto i = static_cast<std::size_t>(trial);
    const auto f = random_tensor({2, 1 + i % 3, 2}, p, rng, 0.5);
    const auto g = random_tensor({1 + i % 2, 2, 1 + i / 2 % 2}, p, rng, 0.5);
    const auto df = exact_slice_rank_with_witness(f).decomposition;
    const auto fg = tensor_product(f, g);
    const auto gd = g.dims();
    const auto dt = product_slice_decomposition(f, df, g, ProductMode::tensor_rank);
    const auto dm = product_slice_decomposition(f, df, g, ProductMode::max_axis);
    EXPECT_TRUE(verify_slice_decomposition(fg, dt));
    EXPECT_TRUE(verify_slice_decomposition(fg, dm));
    EXPECT_LE(dt.size(), df.size() * g.support_size());
    EXPECT_LE(dm.size(), df.size() * std::max({gd[0], gd[1], gd[2]}));
  }
}
