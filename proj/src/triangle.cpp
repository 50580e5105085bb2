#include "slicerank/triangle.hpp"

#include <string>

#include "slicerank/errors.hpp"
#include "slicerank/groups.hpp"

namespace slicerank {

void validate_shape(const TriangleDecomposition& d) {
  const auto check = [&](const FpMatrix& m, std::size_t n, const char* name) {
    if (m.rows != d.k || m.cols != n)
      throw InvalidArgument(std::string("triangle decomposition: table ") + name + " must be " + std::to_string(d.k) +
                            "x" + std::to_string(n));
  };
  check(d.f, d.dims[0], "f");
  check(d.g, d.dims[1], "g");
  check(d.h, d.dims[2], "h");
  for (const auto& c : d.coefficients)
    if (c.a + c.b + c.c >= d.k) throw InvalidArgument("triangle decomposition: coefficient outside a+b+c < k");
  if (d.dims[2] == 0 ? d.z_shift != 0 : d.z_shift >= d.dims[2])
    throw InvalidArgument("triangle decomposition: z shift out of range");
}

std::vector<Fp> reconstruct(const TriangleDecomposition& d) {
  validate_shape(d);
  const PrimeField f(d.p);
  const auto [nx, ny, nz] = d.dims;
  std::vector<Fp> out(nx * ny * nz, 0);
  for (const auto& c : d.coefficients) {
    if (c.r == 0) continue;
    for (std::size_t x = 0; x < nx; ++x) {
      const Fp fx = f.mul(c.r, d.f.at(c.a, x));
      if (fx == 0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        const Fp fxy = f.mul(fx, d.g.at(c.b, y));
        if (fxy == 0) continue;
        for (std::size_t z = 0; z < nz; ++z) {
          auto& slot = out[(x * ny + y) * nz + z];
          slot = f.add(slot, f.mul(fxy, d.h.at(c.c, z)));
        }
      }
    }
  }
  return out;
}

bool verify_triangle_decomposition(const Tensor3& t, const TriangleDecomposition& d) {
  require_same_shape(t.dims(), d.dims, "verify_triangle_decomposition");
  if (static_cast<std::int64_t>(t.field().p()) != d.p) throw InvalidArgument("verify_triangle_decomposition: field mismatch");
  const auto values = reconstruct(d);
  const auto [nx, ny, nz] = d.dims;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z)
        if (values[(x * ny + y) * nz + z] != t.at(x, y, (z + d.z_shift) % nz)) return false;
  return true;
}

TriangleDecomposition triangle_decomposition_cyclic(std::int64_t q) {
  const auto [p, r] = prime_power_parts(q);
  if (r == 0) throw InvalidArgument("triangle_decomposition_cyclic: " + std::to_string(q) + " is not a prime power");
  const std::size_t n = static_cast<std::size_t>(q);
  TriangleDecomposition d;
  d.p = p;
  d.k = n;
  d.dims = {n, n, n};
  d.z_shift = 1;
  FpMatrix table(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x) table.at(a, x) = lucas_binom(x, a, p);
  d.f = d.g = d.h = table;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; a + b < n; ++b) d.coefficients.push_back({a, b, n - 1 - a - b, 1});
  return d;
}

TriangleDecomposition triangle_decomposition_poly(const std::vector<std::int64_t>& values, std::int64_t p) {
  const PrimeField field(p);
  const std::size_t n = static_cast<std::size_t>(p);
  if (values.size() != n) throw InvalidArgument("triangle_decomposition_poly: need one value per element of F_p");

  // Powers table V[j][x] = x^j (0^0 = 1); P = Σ_j c_j x^j solves c·V = values.
  FpMatrix powers(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t x = 0; x < n; ++x) powers.at(j, x) = field.pow(static_cast<Fp>(x), j);
  const auto inv = inverse(field, powers);
  if (!inv) throw std::logic_error("Vandermonde matrix over F_p is singular");
  std::vector<Fp> coeff(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t x = 0; x < n; ++x)
      coeff[j] = field.add(coeff[j], field.mul(field.reduce(values[x]), inv->at(x, j)));

  std::vector<Fp> fact(n, 1), inv_fact(n, 1);
  for (std::size_t i = 1; i < n; ++i) fact[i] = field.mul(fact[i - 1], static_cast<Fp>(i));
  for (std::size_t i = 0; i < n; ++i) inv_fact[i] = field.inv(fact[i]);

  TriangleDecomposition d;
  d.p = p;
  d.k = n;
  d.dims = {n, n, n};
  d.f = d.g = d.h = powers;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; a + b < n; ++b)
      for (std::size_t c = 0; a + b + c < n; ++c) {
        const std::size_t j = a + b + c;
        if (coeff[j] == 0) continue;
        const Fp multinomial = field.mul(fact[j], field.mul(inv_fact[a], field.mul(inv_fact[b], inv_fact[c])));
        d.coefficients.push_back({a, b, c, field.mul(coeff[j], multinomial)});
      }
  return d;
}

Tensor3 poly_sum_tensor(const std::vector<std::int64_t>& values, std::int64_t p) {
  const PrimeField field(p);
  const std::size_t n = static_cast<std::size_t>(p);
  if (values.size() != n) throw InvalidArgument("poly_sum_tensor: need one value per element of F_p");
  const auto labels = token_labels(n);
  return Tensor3::from_function(field, {labels, labels, labels},
                                [&](std::size_t x, std::size_t y, std::size_t z) { return values[(x + y + z) % n]; });
}

}  // namespace slicerank
