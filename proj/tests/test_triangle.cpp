#include <gtest/gtest.h>

#include "oracles.hpp"
#include "slicerank/errors.hpp"
#include "slicerank/slice.hpp"
#include "slicerank/triangle.hpp"

using namespace slicerank;

namespace {

// D_{Z/q}(x, y, z + shift) written out directly.
Tensor3 shifted_group_tensor(std::int64_t q, std::int64_t p, std::size_t shift) {
  const auto l = token_labels(static_cast<std::size_t>(q));
  return Tensor3::from_function(PrimeField(p), {l, l, l}, [&](std::size_t x, std::size_t y, std::size_t z) {
    return (static_cast<std::int64_t>(x + y + z + shift) % q) == 0;
  });
}

}  // namespace

TEST(Lucas, Examples) {
  EXPECT_EQ(lucas_binom(5, 2, 3), 1u);
  EXPECT_EQ(lucas_binom(4, 2, 2), 0u);
  for (std::uint64_t m = 0; m < 20; ++m) EXPECT_EQ(lucas_binom(m, 0, 5), 1u);
}

TEST(Lucas, AgreesWithBigBinomials) {
  for (std::int64_t p : {2, 3, 5, 7, 11, 13})
    for (int m = 0; m <= 200; m += (m < 40 ? 1 : 7))
      for (int k = 0; k <= 200; k += (k < 40 ? 1 : 11))
        ASSERT_EQ(BigInt(lucas_binom(m, k, p)), oracle::binomial(m, k) % p) << m << " " << k << " " << p;
}

TEST(Lucas, PeriodicModuloPrimePower) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    const auto [p, r] = prime_power_parts(q);
    for (std::int64_t k = 0; k < q; ++k)
      for (std::int64_t m = 0; m <= 5 * q; ++m)
        ASSERT_EQ(lucas_binom(m, k, p), lucas_binom(m % q, k, p)) << q << " " << k << " " << m;
  }
}

TEST(TriangleCyclic, ReconstructsShiftedGroupTensor) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25}) {
    const auto d = triangle_decomposition_cyclic(q);
    const auto [p, r] = prime_power_parts(q);
    EXPECT_EQ(d.k, static_cast<std::size_t>(q));
    EXPECT_EQ(d.z_shift, 1u);
    for (const auto& c : d.coefficients) EXPECT_LT(c.a + c.b + c.c, d.k);
    // The stored target is D(x, y, z + 1); compare against a direct table.
    EXPECT_EQ(reconstruct(d), shifted_group_tensor(q, p, 1).entries()) << q;
    EXPECT_TRUE(verify_triangle_decomposition(group_tensor(GroupSpec::cyclic(q), p), d)) << q;
  }
}

TEST(TriangleCyclic, Q2IsParity) {
  const auto d = triangle_decomposition_cyclic(2);
  const auto v = reconstruct(d);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) EXPECT_EQ(v[(x * 2 + y) * 2 + z], (x + y + z) % 2);
}

TEST(TriangleCyclic, RejectsNonPrimePowers) {
  EXPECT_THROW(triangle_decomposition_cyclic(6), InvalidArgument);
  EXPECT_THROW(triangle_decomposition_cyclic(1), InvalidArgument);
}

TEST(TrianglePoly, ConstantOne) {
  const auto d = triangle_decomposition_poly({1, 1, 1}, 3);
  EXPECT_EQ(d.k, 3u);
  ASSERT_EQ(d.coefficients.size(), 1u);
  EXPECT_EQ(d.coefficients[0], (TriangleCoefficient{0, 0, 0, 1}));
  EXPECT_TRUE(verify_triangle_decomposition(poly_sum_tensor({1, 1, 1}, 3), d));
}

TEST(TrianglePoly, CapSetKernel) {
  const auto d = triangle_decomposition_poly({1, 0, 0}, 3);
  EXPECT_TRUE(verify_triangle_decomposition(group_tensor(GroupSpec::cyclic(3), 3), d));
}

TEST(TrianglePoly, IdentityOverF2) {
  const auto d = triangle_decomposition_poly({0, 1}, 2);
  const auto v = reconstruct(d);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) EXPECT_EQ(v[(x * 2 + y) * 2 + z], (x + y + z) % 2);
}

TEST(TrianglePoly, EveryFunctionOnSmallFields) {
  for (std::int64_t p : {2, 3, 5}) {
    std::vector<std::int64_t> values(static_cast<std::size_t>(p), 0);
    for (int code = 0; code < std::min(200, static_cast<int>(std::pow(p, p))); ++code) {
      int c = code;
      for (auto& v : values) {
        v = c % p;
        c /= static_cast<int>(p);
      }
      EXPECT_TRUE(verify_triangle_decomposition(poly_sum_tensor(values, p), triangle_decomposition_poly(values, p)));
    }
  }
}

TEST(TriangleVerify, ZeroAndMutation) {
  auto d = triangle_decomposition_cyclic(3);
  const Tensor3 zero(PrimeField(3), {token_labels(3), token_labels(3), token_labels(3)});
  auto zeroed = d;
  for (auto& c : zeroed.coefficients) c.r = 0;
  EXPECT_TRUE(verify_triangle_decomposition(zero, zeroed));
  d.coefficients[0].r = (d.coefficients[0].r + 1) % 3;
  EXPECT_FALSE(verify_triangle_decomposition(group_tensor(GroupSpec::cyclic(3), 3), d));
  auto bad = triangle_decomposition_cyclic(3);
  bad.coefficients.push_back({2, 1, 0, 1});
  EXPECT_THROW(validate_shape(bad), InvalidArgument);
  EXPECT_THROW(verify_triangle_decomposition(group_tensor(GroupSpec::cyclic(2), 3), triangle_decomposition_cyclic(3)),
               InvalidArgument);
}
