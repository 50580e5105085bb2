#include "slicerank/linalg.hpp"

#include <algorithm>

#include "slicerank/errors.hpp"

namespace slicerank {

FpMatrix FpMatrix::identity(std::size_t n) {
  FpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<Fp>>& rows, std::size_t cols) {
  FpMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("matrix row has wrong length");
    std::copy(rows[r].begin(), rows[r].end(), m.data.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

std::vector<Fp> FpMatrix::row(std::size_t r) const {
  return {data.begin() + static_cast<std::ptrdiff_t>(r * cols), data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
}

std::vector<std::vector<Fp>> FpMatrix::row_list() const {
  std::vector<std::vector<Fp>> out;
  for (std::size_t r = 0; r < rows; ++r) out.push_back(row(r));
  return out;
}

std::vector<std::size_t> rref_in_place(const PrimeField& f, FpMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols && lead < m.rows; ++c) {
    std::size_t r = lead;
    while (r < m.rows && m.at(r, c) == 0) ++r;
    if (r == m.rows) continue;
    if (r != lead)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(lead, j));
    const Fp scale = f.inv(m.at(lead, c));
    for (std::size_t j = 0; j < m.cols; ++j) m.at(lead, j) = f.mul(m.at(lead, j), scale);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == lead || m.at(i, c) == 0) continue;
      const Fp factor = m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(lead, j)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::size_t rank(const PrimeField& f, FpMatrix m) { return rref_in_place(f, m).size(); }

std::optional<FpMatrix> inverse(const PrimeField& f, const FpMatrix& m) {
  if (m.rows != m.cols) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = m.rows;
  FpMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const auto pivots = rref_in_place(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  FpMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

FpMatrix transpose(const FpMatrix& m) {
  FpMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

FpMatrix multiply(const PrimeField& f, const FpMatrix& a, const FpMatrix& b) {
  if (a.cols != b.rows) throw InvalidArgument("matrix product shape mismatch");
  FpMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Fp aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return out;
}

FpMatrix orthogonal_complement(const PrimeField& f, const FpMatrix& rows) {
  FpMatrix m = rows;
  const auto pivots = rref_in_place(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix out(m.cols - pivots.size(), m.cols);
  std::size_t r = 0;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    out.at(r, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) out.at(r, pivots[i]) = f.neg(m.at(i, free));
    ++r;
  }
  return out;
}

FpMatrix complete_to_basis(const PrimeField& f, const FpMatrix& rows) {
  if (rank(f, rows) != rows.rows) throw InvalidArgument("complete_to_basis: rows are linearly dependent");
  FpMatrix out = rows;
  for (std::size_t e = 0; e < rows.cols && out.rows < rows.cols; ++e) {
    FpMatrix trial = out;
    trial.rows += 1;
    trial.data.resize(trial.rows * trial.cols, 0);
    trial.at(trial.rows - 1, e) = 1;
    if (rank(f, trial) == trial.rows) out = std::move(trial);
  }
  return out;
}

std::optional<FpMatrix> dual_basis(const PrimeField& f, const FpMatrix& basis) {
  // basis * dual^T = I  =>  dual = (basis^{-1})^T.
  const auto inv = inverse(f, basis);
  if (!inv) return std::nullopt;
  return transpose(*inv);
}

namespace {

void enumerate_rref(const PrimeField& f, std::size_t n, std::size_t dim, std::vector<std::size_t>& pivots,
                    std::vector<FpMatrix>& out) {
  if (pivots.size() < dim) {
    const std::size_t start = pivots.empty() ? 0 : pivots.back() + 1;
    for (std::size_t c = start; c + (dim - pivots.size()) <= n; ++c) {
      pivots.push_back(c);
      enumerate_rref(f, n, dim, pivots, out);
      pivots.pop_back();
    }
    return;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t c = pivots[i] + 1; c < n; ++c)
      if (!is_pivot[c]) free.emplace_back(i, c);
  std::vector<Fp> digits(free.size(), 0);
  while (true) {
    FpMatrix m(dim, n);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, pivots[i]) = 1;
    for (std::size_t k = 0; k < free.size(); ++k) m.at(free[k].first, free[k].second) = digits[k];
    out.push_back(std::move(m));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == f.p()) digits[k++] = 0;
    if (k == digits.size()) break;
  }
}

}  // namespace

std::vector<FpMatrix> enumerate_subspaces(const PrimeField& f, std::size_t n) {
  std::vector<FpMatrix> out;
  for (std::size_t dim = 0; dim <= n; ++dim) {
    std::vector<std::size_t> pivots;
    enumerate_rref(f, n, dim, pivots, out);
  }
  return out;
}

}  // namespace slicerank
