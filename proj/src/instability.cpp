#include "slicerank/instability.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "slicerank/errors.hpp"
#include "slicerank/parallel.hpp"

namespace slicerank {

namespace {

Rational average(const std::vector<std::int64_t>& w) {
  const std::int64_t sum = std::accumulate(w.begin(), w.end(), std::int64_t{0});
  return Rational(sum, static_cast<std::int64_t>(w.size()));
}

std::int64_t range(const std::vector<std::int64_t>& w) {
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return *hi - *lo;
}

bool constant(const std::vector<std::int64_t>& w) { return range(w) == 0; }

}  // namespace

Rational cutoff(const InstabilityCertificate& c) {
  Rational avg{0};
  std::int64_t spread = 0;
  for (const auto& w : c.weights) {
    if (w.empty()) throw InvalidArgument("instability certificate: empty weight vector");
    avg += average(w);
    spread += range(w);
  }
  return avg - c.epsilon * spread;
}

bool trivial_weights(const InstabilityCertificate& c) {
  return std::all_of(c.weights.begin(), c.weights.end(), [](const auto& w) { return constant(w); });
}

InstabilityVerdict verify_instability_certificate(const Tensor3& t, const InstabilityCertificate& c) {
  const auto dims = t.dims();
  if (static_cast<std::int64_t>(t.field().p()) != c.p) throw InvalidArgument("instability certificate: field mismatch");
  std::array<FpMatrix, 3> duals;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& b = c.bases[a];
    if (dims[a] == 0) throw InvalidArgument("instability certificate: empty axis");
    if (b.rows != dims[a] || b.cols != dims[a])
      throw InvalidArgument("instability certificate: basis " + std::to_string(a) + " must be square of the axis size");
    if (c.weights[a].size() != dims[a]) throw InvalidArgument("instability certificate: weight vector length mismatch");
    auto d = dual_basis(t.field(), b);
    if (!d) throw InvalidArgument("instability certificate: basis " + std::to_string(a) + " is not invertible");
    duals[a] = std::move(*d);
  }
  InstabilityVerdict v;
  v.cutoff = cutoff(c);
  if (c.epsilon < 0) {
    v.reason = "epsilon is negative";
    return v;
  }
  if (trivial_weights(c)) {
    v.reason = "weights are all constant";
    return v;
  }
  const auto r = contract_all(t, duals[0], duals[1], duals[2]);
  const auto& [u, w2, w3] = c.weights;
  for (std::size_t a = 0; a < dims[0]; ++a)
    for (std::size_t b = 0; b < dims[1]; ++b)
      for (std::size_t cc = 0; cc < dims[2]; ++cc) {
        if (r[(a * dims[1] + b) * dims[2] + cc] == 0) continue;
        if (Rational(u[a] + w2[b] + w3[cc]) > v.cutoff) {
          v.violation = std::array<std::size_t, 3>{a, b, cc};
          v.reason = "coefficient above the cutoff";
          return v;
        }
      }
  v.valid = true;
  return v;
}

InstabilityCertificate instability_from_slice(const SliceDecomposition& d) {
  validate_shape(d);
  const auto dims = d.dims;
  const std::size_t smallest = *std::min_element(dims.begin(), dims.end());
  if (d.size() >= smallest)
    throw InvalidArgument("instability_from_slice: decomposition size " + std::to_string(d.size()) +
                          " is not below the smallest axis " + std::to_string(smallest));
  const PrimeField f(d.p);
  // Univariate factors living on X, Y, Z respectively.
  const std::array<const std::vector<SliceTerm>*, 3> groups{&d.yz, &d.xz, &d.xy};

  InstabilityCertificate c;
  c.p = d.p;
  std::array<std::size_t, 3> lowered{};
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<std::vector<Fp>> singles;
    for (const auto& term : *groups[a]) singles.push_back(term.single);
    FpMatrix span = FpMatrix::from_rows(singles, dims[a]);
    const auto pivots = rref_in_place(f, span);
    FpMatrix independent(pivots.size(), dims[a]);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t x = 0; x < dims[a]; ++x) independent.at(i, x) = span.at(i, x);
    lowered[a] = pivots.size();
    c.bases[a] = complete_to_basis(f, independent);
    c.weights[a].assign(dims[a], 0);
    std::fill_n(c.weights[a].begin(), lowered[a], -1);
  }
  if (trivial_weights(c)) {
    // Zero tensor: any nontrivial weights certify it; lower one function on
    // the first axis that has room.
    const auto it = std::find_if(dims.begin(), dims.end(), [](std::size_t n) { return n >= 2; });
    if (it == dims.end()) throw InvalidArgument("instability_from_slice: no nontrivial weights exist on 1x1x1 axes");
    const std::size_t a = static_cast<std::size_t>(it - dims.begin());
    c.weights[a][0] = -1;
    lowered[a] = 1;
  }
  Rational avg{0};
  std::int64_t lowered_axes = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    avg += average(c.weights[a]);
    if (lowered[a] > 0) ++lowered_axes;
  }
  c.epsilon = (avg + 1) / lowered_axes;
  return c;
}

InstabilityCertificate instability_from_triangle(const TriangleDecomposition& d) {
  validate_shape(d);
  const PrimeField f(d.p);
  InstabilityCertificate c;
  c.p = d.p;
  const std::array<const FpMatrix*, 3> tables{&d.f, &d.g, &d.h};
  for (std::size_t a = 0; a < 3; ++a) {
    if (d.dims[a] != d.k || !inverse(f, *tables[a]))
      throw InvalidArgument("instability_from_triangle: the decomposition's functions must form bases");
    c.bases[a] = *tables[a];
    c.weights[a].resize(d.k);
    std::iota(c.weights[a].begin(), c.weights[a].end(), std::int64_t{0});
  }
  // h_c was written against z + shift; as a function of the original z it is
  // h_c(z - shift).
  const std::size_t nz = d.dims[2];
  for (std::size_t r = 0; r < d.k; ++r)
    for (std::size_t z = 0; z < nz; ++z) c.bases[2].at(r, z) = d.h.at(r, (z + nz - d.z_shift % nz) % nz);
  c.epsilon = d.k >= 2 ? Rational(1, 6) : Rational(0);
  return c;
}

std::vector<FpMatrix> enumerate_frames(const PrimeField& f, std::size_t n) {
  // Normalized vectors (leading nonzero entry 1) in lexicographic order.
  std::vector<std::vector<Fp>> points;
  std::vector<Fp> v(n, 0);
  const Fp p = f.p();
  std::function<void(std::size_t, bool)> gen = [&](std::size_t i, bool led) {
    if (i == n) {
      if (led) points.push_back(v);
      return;
    }
    if (led) {
      for (Fp x = 0; x < p; ++x) {
        v[i] = x;
        gen(i + 1, true);
      }
    } else {
      v[i] = 0;
      gen(i + 1, false);
      v[i] = 1;
      gen(i + 1, true);
    }
    v[i] = 0;
  };
  gen(0, false);
  std::sort(points.begin(), points.end());

  std::vector<FpMatrix> frames;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> pick = [&](std::size_t start) {
    if (chosen.size() == n) {
      std::vector<std::vector<Fp>> rows;
      for (auto i : chosen) rows.push_back(points[i]);
      FpMatrix m = FpMatrix::from_rows(rows, n);
      if (rank(f, m) == n) frames.push_back(std::move(m));
      return;
    }
    for (std::size_t i = start; i < points.size(); ++i) {
      chosen.push_back(i);
      // Prune dependent prefixes early.
      std::vector<std::vector<Fp>> rows;
      for (auto j : chosen) rows.push_back(points[j]);
      if (rank(f, FpMatrix::from_rows(rows, n)) == chosen.size()) pick(i + 1);
      chosen.pop_back();
    }
  };
  if (n == 0) return {FpMatrix(0, 0)};
  pick(0);
  return frames;
}

namespace {

using Mask = std::uint64_t;

struct WeightedMask {
  Mask allowed = 0;  // index triples with u_a + v_b + w_c strictly below the average sum
  std::array<std::vector<std::int64_t>, 3> weights;
};

std::vector<std::vector<std::int64_t>> weight_vectors(std::size_t n, std::int64_t max_weight) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> w(n, 0);
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == n) {
      if (*std::min_element(w.begin(), w.end()) == 0) out.push_back(w);
      return;
    }
    for (std::int64_t x = 0; x <= max_weight; ++x) {
      w[i] = x;
      gen(i + 1);
    }
  };
  gen(0);
  return out;
}

// Inclusion-maximal masks of allowed triples over all nontrivial weights.
std::vector<WeightedMask> maximal_masks(const std::array<std::size_t, 3>& dims, std::int64_t max_weight) {
  const auto [nx, ny, nz] = dims;
  const std::int64_t lx = static_cast<std::int64_t>(nx), ly = static_cast<std::int64_t>(ny),
                     lz = static_cast<std::int64_t>(nz);
  const auto us = weight_vectors(nx, max_weight), vs = weight_vectors(ny, max_weight), ws = weight_vectors(nz, max_weight);
  std::unordered_map<Mask, std::size_t> index;
  std::vector<WeightedMask> all;
  for (const auto& u : us)
    for (const auto& v : vs)
      for (const auto& w : ws) {
        if (constant(u) && constant(v) && constant(w)) continue;
        // Compare u_a+v_b+w_c < Σu/nx + Σv/ny + Σw/nz after scaling by nx·ny·nz.
        const std::int64_t rhs = ly * lz * std::accumulate(u.begin(), u.end(), std::int64_t{0}) +
                                 lx * lz * std::accumulate(v.begin(), v.end(), std::int64_t{0}) +
                                 lx * ly * std::accumulate(w.begin(), w.end(), std::int64_t{0});
        Mask m = 0;
        for (std::size_t a = 0; a < nx; ++a)
          for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t c = 0; c < nz; ++c)
              if (lx * ly * lz * (u[a] + v[b] + w[c]) < rhs) m |= Mask{1} << ((a * ny + b) * nz + c);
        if (index.emplace(m, all.size()).second) all.push_back({m, {u, v, w}});
      }
  std::vector<WeightedMask> maximal;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j)
      dominated = j != i && (all[i].allowed & ~all[j].allowed) == 0 && all[i].allowed != all[j].allowed;
    if (!dominated) maximal.push_back(all[i]);
  }
  return maximal;
}

struct Hit {
  std::size_t i = std::numeric_limits<std::size_t>::max(), j = 0, k = 0;
  std::size_t mask = 0;
  Mask support = 0;
};

}  // namespace

std::optional<InstabilityCertificate> find_instability_certificate(const Tensor3& t,
                                                                    const CertificateSearchOptions& options) {
  const auto& field = t.field();
  const auto dims = t.dims();
  const auto [nx, ny, nz] = dims;
  const auto& g = options.guards;
  for (auto n : dims)
    if (n == 0) throw InvalidArgument("find_instability_certificate: empty axis");
  if (nx > g.certificate_axis || ny > g.certificate_axis || nz > g.certificate_axis ||
      static_cast<std::int64_t>(field.p()) > g.certificate_prime)
    throw GuardExceeded("find_instability_certificate: axes must be <= " + std::to_string(g.certificate_axis) +
                        " and p <= " + std::to_string(g.certificate_prime));
  if (nx * ny * nz > 64) throw GuardExceeded("find_instability_certificate: more than 64 coefficients");
  if (options.max_weight < 1) throw InvalidArgument("find_instability_certificate: max_weight must be >= 1");

  const auto masks = maximal_masks(dims, options.max_weight);
  const auto fx = enumerate_frames(field, nx), fy = enumerate_frames(field, ny), fz = enumerate_frames(field, nz);
  const std::uint32_t p = field.p();

  const std::size_t workers = chunk_count(fx.size(), options.threads);
  std::vector<Hit> hits(workers);
  parallel_chunks(fx.size(), options.threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
    std::unordered_map<Mask, std::size_t> cache;  // support -> mask index + 1, or 0
    const auto certify = [&](Mask s) {
      const auto it = cache.find(s);
      if (it != cache.end()) return it->second;
      std::size_t found = 0;
      for (std::size_t m = 0; m < masks.size() && found == 0; ++m)
        if ((s & ~masks[m].allowed) == 0) found = m + 1;
      cache.emplace(s, found);
      return found;
    };
    std::vector<std::uint32_t> s1(nx * ny * nz), s2(nx * ny * nz);
    for (std::size_t i = begin; i < end; ++i) {
      const auto& dx = fx[i];
      // s1[a][y][z] = Σ_x dx[a][x] F(x,y,z)
      std::fill(s1.begin(), s1.end(), 0);
      for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t x = 0; x < nx; ++x) {
          const std::uint32_t c = dx.at(a, x);
          if (c == 0) continue;
          for (std::size_t yz = 0; yz < ny * nz; ++yz) s1[a * ny * nz + yz] += c * t.entries()[x * ny * nz + yz];
        }
      for (auto& v : s1) v %= p;
      for (std::size_t j = 0; j < fy.size(); ++j) {
        const auto& dy = fy[j];
        std::fill(s2.begin(), s2.end(), 0);
        for (std::size_t a = 0; a < nx; ++a)
          for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t y = 0; y < ny; ++y) {
              const std::uint32_t c = dy.at(b, y);
              if (c == 0) continue;
              for (std::size_t z = 0; z < nz; ++z) s2[(a * ny + b) * nz + z] += c * s1[(a * ny + y) * nz + z];
            }
        for (auto& v : s2) v %= p;
        for (std::size_t k = 0; k < fz.size(); ++k) {
          const auto& dz = fz[k];
          Mask support = 0;
          for (std::size_t ab = 0; ab < nx * ny; ++ab)
            for (std::size_t c = 0; c < nz; ++c) {
              std::uint32_t acc = 0;
              for (std::size_t z = 0; z < nz; ++z) acc += dz.at(c, z) * s2[ab * nz + z];
              if (acc % p != 0) support |= Mask{1} << (ab * nz + c);
            }
          if (const std::size_t m = certify(support); m != 0) {
            hits[worker] = {i, j, k, m - 1, support};
            return;
          }
        }
      }
    }
  });

  const auto best = std::min_element(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  if (best->i == std::numeric_limits<std::size_t>::max()) return std::nullopt;

  InstabilityCertificate c;
  c.p = static_cast<std::int64_t>(p);
  c.bases = {*dual_basis(field, fx[best->i]), *dual_basis(field, fy[best->j]), *dual_basis(field, fz[best->k])};
  c.weights = masks[best->mask].weights;
  // Largest ε for these weights on the observed support.
  const auto& [u, v, w] = c.weights;
  Rational avg = average(u) + average(v) + average(w);
  std::int64_t top = u.empty() ? 0 : *std::min_element(u.begin(), u.end()) + *std::min_element(v.begin(), v.end()) +
                                         *std::min_element(w.begin(), w.end());
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b)
      for (std::size_t cc = 0; cc < nz; ++cc)
        if (best->support >> ((a * ny + b) * nz + cc) & 1) top = std::max(top, u[a] + v[b] + w[cc]);
  c.epsilon = (avg - top) / (range(u) + range(v) + range(w));
  return c;
}

}  // namespace slicerank
