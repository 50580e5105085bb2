#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slicerank/field.hpp"

namespace slicerank {

// Dense row-major matrix over F_p. Rows are the natural unit here: a row is
// a function on an axis, or a vector of a subspace basis.
struct FpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Fp> data;

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  static FpMatrix identity(std::size_t n);
  static FpMatrix from_rows(const std::vector<std::vector<Fp>>& rows, std::size_t cols);

  Fp& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Fp at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::vector<Fp> row(std::size_t r) const;
  std::vector<std::vector<Fp>> row_list() const;

  bool operator==(const FpMatrix&) const = default;
};

// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref_in_place(const PrimeField& f, FpMatrix& m);
std::size_t rank(const PrimeField& f, FpMatrix m);
std::optional<FpMatrix> inverse(const PrimeField& f, const FpMatrix& m);
FpMatrix transpose(const FpMatrix& m);
FpMatrix multiply(const PrimeField& f, const FpMatrix& a, const FpMatrix& b);

// Basis (as rows) of {v : <row_i, v> = 0 for every row}, in RREF-derived
// canonical order.
FpMatrix orthogonal_complement(const PrimeField& f, const FpMatrix& rows);

// Extends the (independent) rows to a basis of F_p^cols by appending unit
// vectors greedily. Throws InvalidArgument if the rows are dependent.
FpMatrix complete_to_basis(const PrimeField& f, const FpMatrix& rows);

// Rows of `dual` satisfy sum_x basis[a][x] * dual[b][x] = [a == b].
// Empty optional if basis is singular.
std::optional<FpMatrix> dual_basis(const PrimeField& f, const FpMatrix& basis);

// Every subspace of F_p^n, each given by a basis in reduced row echelon
// form, ordered by dimension and then lexicographically.
std::vector<FpMatrix> enumerate_subspaces(const PrimeField& f, std::size_t n);

}  // namespace slicerank
