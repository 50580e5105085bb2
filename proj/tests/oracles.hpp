#pragma once

// Independent reference implementations used only by the tests. These are
// deliberately naive (direct enumeration, plain elimination, grid search)
// and share no code with the library beyond its data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "slicerank/groups.hpp"
#include "slicerank/numeric.hpp"
#include "slicerank/tensor.hpp"

namespace oracle {

using slicerank::BigInt;
using slicerank::GroupElement;
using slicerank::GroupSpec;
using slicerank::Rational;

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

// Visits every tuple in {0..base-1}^n.
inline void for_each_tuple(int base, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(t);
    int i = n - 1;
    while (i >= 0 && ++t[i] == base) t[i--] = 0;
    if (i < 0) return;
  }
}

// #{tuples from the weight list with Σ w <= n·threshold}, by enumeration.
inline BigInt tuple_count(const std::vector<std::int64_t>& weights, int n, const Rational& threshold) {
  BigInt count = 0;
  for_each_tuple(static_cast<int>(weights.size()), n, [&](const std::vector<int>& t) {
    std::int64_t s = 0;
    for (int i : t) s += weights[static_cast<std::size_t>(i)];
    if (Rational(s) <= threshold * n) ++count;
  });
  return count;
}

// sup_{θ<0} αθ - log(mean_{j=0..m} e^{θ j/m}) by a log-spaced grid on -θ
// followed by repeated local zooming.
inline double rate_I(double m, double alpha) {
  const auto objective = [&](double theta) {
    double mean = 0;
    for (int j = 0; j <= static_cast<int>(m); ++j) mean += std::exp(theta * j / m);
    return alpha * theta - std::log(mean / (m + 1));
  };
  double best_t = -1, best = objective(-1);
  for (int i = 0; i <= 4000; ++i) {
    const double theta = -std::pow(10.0, -6 + 10.0 * i / 4000);
    const double v = objective(theta);
    if (v > best) best = v, best_t = theta;
  }
  double width = std::abs(best_t) * 0.01;
  for (int round = 0; round < 60; ++round) {
    for (int i = -50; i <= 50; ++i) {
      const double theta = best_t + width * i / 50;
      if (theta >= 0) continue;
      const double v = objective(theta);
      if (v > best) best = v, best_t = theta;
    }
    width /= 5;
  }
  return best;
}

// (1/s) inf_{0<x<1} (1 - x^s)/(1 - x) x^{-(s-1)/3}, same grid-and-zoom scheme.
inline double j_explicit(double s) {
  const auto objective = [&](double x) { return (1 - std::pow(x, s)) / (1 - x) * std::pow(x, -(s - 1) / 3) / s; };
  double best_x = 0.5, best = objective(0.5);
  for (int i = 1; i < 10000; ++i) {
    const double x = i / 10000.0;
    const double v = objective(x);
    if (v < best) best = v, best_x = x;
  }
  double width = 1e-4;
  for (int round = 0; round < 40; ++round) {
    for (int i = -50; i <= 50; ++i) {
      const double x = best_x + width * i / 50;
      if (x <= 0 || x >= 1) continue;
      const double v = objective(x);
      if (v < best) best = v, best_x = x;
    }
    width /= 5;
  }
  return best;
}

inline GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  GroupElement out = a;
  for (std::size_t i = 0; i < out.residues.size(); ++i) out.residues[i] = (a.residues[i] + b.residues[i]) % g.moduli()[i];
  return out;
}

inline GroupElement neg(const GroupSpec& g, const GroupElement& a) {
  GroupElement out = a;
  for (std::size_t i = 0; i < out.residues.size(); ++i) out.residues[i] = (g.moduli()[i] - a.residues[i]) % g.moduli()[i];
  return out;
}

inline bool is_zero(const GroupElement& a) {
  return std::all_of(a.residues.begin(), a.residues.end(), [](std::int64_t r) { return r == 0; });
}

using Triple = std::array<GroupElement, 3>;

// Tricolored sum-free by definition: s_i + t_j + u_k = 0 iff i = j = k.
inline bool sumfree(const GroupSpec& g, const std::vector<Triple>& m) {
  for (std::size_t a = 0; a < 3; ++a) {
    std::set<GroupElement> seen;
    for (const auto& t : m)
      if (!seen.insert(t[a]).second) return false;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      for (std::size_t k = 0; k < m.size(); ++k)
        if (is_zero(add(g, add(g, m[i][0], m[j][1]), m[k][2])) != (i == j && j == k)) return false;
  return true;
}

// Border variant by definition, weights looked up per element.
inline bool border(const GroupSpec& g, const std::vector<Triple>& m, const std::map<GroupElement, std::int64_t>& alpha,
                   const std::map<GroupElement, std::int64_t>& beta, const std::map<GroupElement, std::int64_t>& gamma) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      for (std::size_t k = 0; k < m.size(); ++k) {
        const bool zero = is_zero(add(g, add(g, m[i][0], m[j][1]), m[k][2]));
        const std::int64_t w = alpha.at(m[i][0]) + beta.at(m[j][1]) + gamma.at(m[k][2]);
        if (i == j && j == k) {
          if (!zero || w != 0) return false;
        } else if (zero && w <= 0) {
          return false;
        }
      }
  return true;
}

// Largest tricolored sum-free set by trying every subset of zero-sum
// triples. Only for |H| <= 4 (at most 2^16 subsets).
inline std::size_t max_sumfree(const GroupSpec& g) {
  const auto elems = g.elements(16);
  std::vector<Triple> zero_sum;
  for (const auto& s : elems)
    for (const auto& t : elems) zero_sum.push_back({s, t, neg(g, add(g, s, t))});
  std::size_t best = 0;
  const std::size_t n = zero_sum.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    std::vector<Triple> m;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) m.push_back(zero_sum[i]);
    if (sumfree(g, m)) best = size;
  }
  return best;
}

using Set = std::vector<GroupElement>;

// a' - a + b' - b + c' - c = 0 only trivially, enumerated over the sets.
inline bool tpp(const GroupSpec& g, const Set& a, const Set& b, const Set& c) {
  for (const auto& a1 : a)
    for (const auto& a2 : a)
      for (const auto& b1 : b)
        for (const auto& b2 : b)
          for (const auto& c1 : c)
            for (const auto& c2 : c) {
              const auto s = add(g, add(g, add(g, a2, neg(g, a1)), add(g, b2, neg(g, b1))), add(g, c2, neg(g, c1)));
              if (is_zero(s) && !(a1 == a2 && b1 == b2 && c1 == c2)) return false;
            }
  return true;
}

struct TripleSets {
  Set a, b, c;
};

// (a_i - b_i) + (b_j - c_j) + (c_k - a_k) = 0 forces i = j = k, plus TPP per
// triple.
inline bool stpp(const GroupSpec& g, const std::vector<TripleSets>& ts) {
  for (const auto& t : ts)
    if (!tpp(g, t.a, t.b, t.c)) return false;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j)
      for (std::size_t k = 0; k < ts.size(); ++k) {
        if (i == j && j == k) continue;
        for (const auto& ai : ts[i].a)
          for (const auto& bi : ts[i].b)
            for (const auto& bj : ts[j].b)
              for (const auto& cj : ts[j].c)
                for (const auto& ck : ts[k].c)
                  for (const auto& ak : ts[k].a) {
                    const auto s = add(g, add(g, add(g, ai, neg(g, bi)), add(g, bj, neg(g, cj))), add(g, ck, neg(g, ak)));
                    if (is_zero(s)) return false;
                  }
      }
  return true;
}

// Rank over F_p by plain elimination on a copy.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  const auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const std::int64_t iv = inv(m[r][c]);
    for (auto& v : m[r]) v = v * iv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] % p == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank of the flattening that keeps `axis` as rows.
inline std::size_t flattening_rank(const slicerank::Tensor3& t, std::size_t axis) {
  const auto d = t.dims();
  std::vector<std::vector<std::int64_t>> rows(d[axis]);
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        const std::size_t idx[3] = {i, j, k};
        rows[idx[axis]].push_back(t.at(i, j, k));
      }
  return rank_mod_p(rows, t.field().p());
}

}  // namespace oracle
