#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "slicerank/linalg.hpp"
#include "slicerank/tensor.hpp"

namespace slicerank {

struct TriangleCoefficient {
  std::size_t a = 0, b = 0, c = 0;
  Fp r = 0;
  bool operator==(const TriangleCoefficient&) const = default;
};

// G(x, y, z) = Σ_{a+b+c<k} r_{abc} f_a(x) g_b(y) h_c(z), where G is the
// target tensor with its z axis cyclically shifted: G(x,y,z) = F(x,y,z+shift).
struct TriangleDecomposition {
  std::int64_t p = 2;
  std::size_t k = 0;
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::size_t z_shift = 0;
  FpMatrix f, g, h;  // k rows each, one function per row
  std::vector<TriangleCoefficient> coefficients;  // nonzero r only
};

// Throws InvalidArgument on wrong table sizes or a+b+c >= k.
void validate_shape(const TriangleDecomposition& d);
std::vector<Fp> reconstruct(const TriangleDecomposition& d);
bool verify_triangle_decomposition(const Tensor3& t, const TriangleDecomposition& d);

// D_{Z/q}(x, y, z+1) = Σ_{a+b+c=q-1} C(x,a) C(y,b) C(z,c) over F_p, q = p^r.
TriangleDecomposition triangle_decomposition_cyclic(std::int64_t q);

// P(x+y+z) over F_p from the value table P[0..p-1], via the unique
// interpolating polynomial of degree < p.
TriangleDecomposition triangle_decomposition_poly(const std::vector<std::int64_t>& values, std::int64_t p);

// The tensor (x, y, z) ↦ P(x+y+z) with axes labelled by Z/p.
Tensor3 poly_sum_tensor(const std::vector<std::int64_t>& values, std::int64_t p);

}  // namespace slicerank
