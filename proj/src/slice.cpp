#include "slicerank/slice.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

#include "slicerank/errors.hpp"
#include "slicerank/parallel.hpp"

namespace slicerank {

void validate_shape(const SliceDecomposition& d) {
  const auto [nx, ny, nz] = d.dims;
  const auto check = [](const std::vector<SliceTerm>& terms, std::size_t pair, std::size_t single, const char* name) {
    for (const auto& t : terms)
      if (t.pair.size() != pair || t.single.size() != single)
        throw InvalidArgument(std::string("slice decomposition: ") + name + " term has wrong table sizes");
  };
  check(d.xy, nx * ny, nz, "xy");
  check(d.xz, nx * nz, ny, "xz");
  check(d.yz, ny * nz, nx, "yz");
}

std::vector<Fp> reconstruct(const SliceDecomposition& d) {
  validate_shape(d);
  const PrimeField f(d.p);
  const auto [nx, ny, nz] = d.dims;
  std::vector<Fp> out(nx * ny * nz, 0);
  const auto idx = [&](std::size_t x, std::size_t y, std::size_t z) { return (x * ny + y) * nz + z; };
  for (const auto& t : d.xy)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const Fp a = t.pair[x * ny + y];
        if (a == 0) continue;
        for (std::size_t z = 0; z < nz; ++z) out[idx(x, y, z)] = f.add(out[idx(x, y, z)], f.mul(a, t.single[z]));
      }
  for (const auto& t : d.xz)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t z = 0; z < nz; ++z) {
        const Fp a = t.pair[x * nz + z];
        if (a == 0) continue;
        for (std::size_t y = 0; y < ny; ++y) out[idx(x, y, z)] = f.add(out[idx(x, y, z)], f.mul(a, t.single[y]));
      }
  for (const auto& t : d.yz)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const Fp a = t.pair[y * nz + z];
        if (a == 0) continue;
        for (std::size_t x = 0; x < nx; ++x) out[idx(x, y, z)] = f.add(out[idx(x, y, z)], f.mul(a, t.single[x]));
      }
  return out;
}

bool verify_slice_decomposition(const Tensor3& t, const SliceDecomposition& d) {
  require_same_shape(t.dims(), d.dims, "verify_slice_decomposition");
  if (static_cast<std::int64_t>(t.field().p()) != d.p) throw InvalidArgument("verify_slice_decomposition: field mismatch");
  return reconstruct(d) == t.entries();
}

TensorDecomposition support_expansion(const Tensor3& t) {
  TensorDecomposition d{static_cast<std::int64_t>(t.field().p()), t.dims(), {}};
  const auto [nx, ny, nz] = t.dims();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const Fp v = t.at(x, y, z);
        if (v == 0) continue;
        RankOneTerm term{std::vector<Fp>(nx, 0), std::vector<Fp>(ny, 0), std::vector<Fp>(nz, 0)};
        term.x[x] = v;
        term.y[y] = 1;
        term.z[z] = 1;
        d.terms.push_back(std::move(term));
      }
  return d;
}

bool verify_tensor_decomposition(const Tensor3& t, const TensorDecomposition& d) {
  require_same_shape(t.dims(), d.dims, "verify_tensor_decomposition");
  const auto& f = t.field();
  const auto [nx, ny, nz] = d.dims;
  std::vector<Fp> acc(nx * ny * nz, 0);
  for (const auto& term : d.terms) {
    if (term.x.size() != nx || term.y.size() != ny || term.z.size() != nz)
      throw InvalidArgument("tensor decomposition term has wrong lengths");
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const Fp a = f.mul(term.x[x], term.y[y]);
        if (a == 0) continue;
        for (std::size_t z = 0; z < nz; ++z) {
          auto& slot = acc[(x * ny + y) * nz + z];
          slot = f.add(slot, f.mul(a, term.z[z]));
        }
      }
  }
  return acc == t.entries();
}

std::vector<Fp> contract_all(const Tensor3& t, const FpMatrix& ax, const FpMatrix& ay, const FpMatrix& az) {
  const auto& f = t.field();
  const auto [nx, ny, nz] = t.dims();
  if (ax.cols != nx || ay.cols != ny || az.cols != nz) throw InvalidArgument("contract_all: shape mismatch");
  const std::size_t ra = ax.rows, rb = ay.rows, rc = az.rows;
  // Contract z, then y, then x.
  std::vector<Fp> s1(nx * ny * rc, 0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const Fp v = t.at(x, y, z);
        if (v == 0) continue;
        for (std::size_t c = 0; c < rc; ++c) {
          auto& s = s1[(x * ny + y) * rc + c];
          s = f.add(s, f.mul(v, az.at(c, z)));
        }
      }
  std::vector<Fp> s2(nx * rb * rc, 0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t c = 0; c < rc; ++c) {
        const Fp v = s1[(x * ny + y) * rc + c];
        if (v == 0) continue;
        for (std::size_t b = 0; b < rb; ++b) {
          auto& s = s2[(x * rb + b) * rc + c];
          s = f.add(s, f.mul(v, ay.at(b, y)));
        }
      }
  std::vector<Fp> out(ra * rb * rc, 0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t b = 0; b < rb; ++b)
      for (std::size_t c = 0; c < rc; ++c) {
        const Fp v = s2[(x * rb + b) * rc + c];
        if (v == 0) continue;
        for (std::size_t a = 0; a < ra; ++a) {
          auto& s = out[(a * rb + b) * rc + c];
          s = f.add(s, f.mul(v, ax.at(a, x)));
        }
      }
  return out;
}

SliceDecomposition decomposition_from_vanishing(const Tensor3& t, const std::array<FpMatrix, 3>& vanishing) {
  const auto& f = t.field();
  const auto dims = t.dims();
  const auto [nx, ny, nz] = dims;
  // Adapted bases: the first codim(U_a) rows span the annihilator of the
  // vanishing subspace U_a, so the remaining dual rows span U_a itself.
  std::array<FpMatrix, 3> basis, dual;
  std::array<std::size_t, 3> codim{};
  for (std::size_t a = 0; a < 3; ++a) {
    if (vanishing[a].cols != dims[a]) throw InvalidArgument("decomposition_from_vanishing: subspace has wrong ambient size");
    const FpMatrix annihilator = orthogonal_complement(f, vanishing[a]);
    codim[a] = annihilator.rows;
    basis[a] = complete_to_basis(f, annihilator);
    dual[a] = *dual_basis(f, basis[a]);
  }
  const auto r = contract_all(t, dual[0], dual[1], dual[2]);
  const auto coeff = [&](std::size_t a, std::size_t b, std::size_t c) { return r[(a * ny + b) * nz + c]; };

  SliceDecomposition d{static_cast<std::int64_t>(f.p()), dims, {}, {}, {}};
  const auto& bx = basis[0];
  const auto& by = basis[1];
  const auto& bz = basis[2];
  for (std::size_t a = 0; a < codim[0]; ++a) {
    SliceTerm term{std::vector<Fp>(ny * nz, 0), bx.row(a)};
    for (std::size_t b = 0; b < ny; ++b)
      for (std::size_t c = 0; c < nz; ++c) {
        const Fp v = coeff(a, b, c);
        if (v == 0) continue;
        for (std::size_t y = 0; y < ny; ++y)
          for (std::size_t z = 0; z < nz; ++z)
            term.pair[y * nz + z] = f.add(term.pair[y * nz + z], f.mul(v, f.mul(by.at(b, y), bz.at(c, z))));
      }
    d.yz.push_back(std::move(term));
  }
  for (std::size_t b = 0; b < codim[1]; ++b) {
    SliceTerm term{std::vector<Fp>(nx * nz, 0), by.row(b)};
    for (std::size_t a = codim[0]; a < nx; ++a)
      for (std::size_t c = 0; c < nz; ++c) {
        const Fp v = coeff(a, b, c);
        if (v == 0) continue;
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t z = 0; z < nz; ++z)
            term.pair[x * nz + z] = f.add(term.pair[x * nz + z], f.mul(v, f.mul(bx.at(a, x), bz.at(c, z))));
      }
    d.xz.push_back(std::move(term));
  }
  for (std::size_t c = 0; c < codim[2]; ++c) {
    SliceTerm term{std::vector<Fp>(nx * ny, 0), bz.row(c)};
    for (std::size_t a = codim[0]; a < nx; ++a)
      for (std::size_t b = codim[1]; b < ny; ++b) {
        const Fp v = coeff(a, b, c);
        if (v == 0) continue;
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t y = 0; y < ny; ++y)
            term.pair[x * ny + y] = f.add(term.pair[x * ny + y], f.mul(v, f.mul(bx.at(a, x), by.at(b, y))));
      }
    d.xy.push_back(std::move(term));
  }
  for (std::size_t a = codim[0]; a < nx; ++a)
    for (std::size_t b = codim[1]; b < ny; ++b)
      for (std::size_t c = codim[2]; c < nz; ++c)
        if (coeff(a, b, c) != 0) throw InvalidArgument("decomposition_from_vanishing: tensor does not vanish on the given subspaces");
  return d;
}

namespace {

struct Candidate {
  std::size_t value = std::numeric_limits<std::size_t>::max();
  std::size_t u = 0;
  std::size_t v = 0;
  auto key() const { return std::tie(value, u, v); }
};

// Rows v_j^T M_i over all pairs, stacked; M_i = F contracted with u_i on X.
FpMatrix mixed_rows(const PrimeField& f, const std::vector<FpMatrix>& contracted, const FpMatrix& vs, std::size_t nz) {
  FpMatrix rows(contracted.size() * vs.rows, nz);
  std::size_t r = 0;
  for (const auto& m : contracted)
    for (std::size_t j = 0; j < vs.rows; ++j, ++r)
      for (std::size_t y = 0; y < m.rows; ++y) {
        const Fp vy = vs.at(j, y);
        if (vy == 0) continue;
        for (std::size_t z = 0; z < nz; ++z) rows.at(r, z) = f.add(rows.at(r, z), f.mul(vy, m.at(y, z)));
      }
  return rows;
}

}  // namespace

SliceRankResult exact_slice_rank_with_witness(const Tensor3& t, const ExactRankOptions& options) {
  const auto& f = t.field();
  const auto dims = t.dims();
  const auto [nx, ny, nz] = dims;
  SliceRankResult result;
  if (t.is_zero()) {
    for (std::size_t a = 0; a < 3; ++a) result.vanishing[a] = FpMatrix::identity(dims[a]);
    result.decomposition = SliceDecomposition{static_cast<std::int64_t>(f.p()), dims, {}, {}, {}};
    return result;
  }
  const auto& g = options.guards;
  if (nx > g.rank_axis || ny > g.rank_axis || nz > g.rank_axis || static_cast<std::int64_t>(f.p()) > g.rank_prime)
    throw GuardExceeded("exact_slice_rank: axes must be <= " + std::to_string(g.rank_axis) + " and p <= " +
                        std::to_string(g.rank_prime));

  const auto us = enumerate_subspaces(f, nx);
  const auto vs = enumerate_subspaces(f, ny);

  // Contract F with each U basis once: M_i(y, z) = Σ_x u_i(x) F(x, y, z).
  std::vector<std::vector<FpMatrix>> contracted(us.size());
  for (std::size_t ui = 0; ui < us.size(); ++ui) {
    for (std::size_t i = 0; i < us[ui].rows; ++i) {
      FpMatrix m(ny, nz);
      for (std::size_t x = 0; x < nx; ++x) {
        const Fp c = us[ui].at(i, x);
        if (c == 0) continue;
        for (std::size_t y = 0; y < ny; ++y)
          for (std::size_t z = 0; z < nz; ++z) m.at(y, z) = f.add(m.at(y, z), f.mul(c, t.at(x, y, z)));
      }
      contracted[ui].push_back(std::move(m));
    }
  }

  const std::size_t workers = chunk_count(us.size(), options.threads);
  std::vector<Candidate> best(workers);
  parallel_chunks(us.size(), options.threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Candidate local;
    for (std::size_t ui = begin; ui < end; ++ui) {
      const std::size_t codim_u = nx - us[ui].rows;
      for (std::size_t vi = 0; vi < vs.size(); ++vi) {
        const std::size_t codim_v = ny - vs[vi].rows;
        if (codim_u + codim_v >= local.value) continue;
        const std::size_t value = codim_u + codim_v + rank(f, mixed_rows(f, contracted[ui], vs[vi], nz));
        const Candidate c{value, ui, vi};
        if (c.key() < local.key()) local = c;
      }
    }
    best[w] = local;
  });
  Candidate winner;
  for (const auto& c : best)
    if (c.key() < winner.key()) winner = c;

  result.rank = winner.value;
  result.vanishing[0] = us[winner.u];
  result.vanishing[1] = vs[winner.v];
  result.vanishing[2] = orthogonal_complement(f, mixed_rows(f, contracted[winner.u], vs[winner.v], nz));
  result.decomposition = decomposition_from_vanishing(t, result.vanishing);
  if (result.decomposition.size() != result.rank) throw std::logic_error("slice rank extraction size mismatch");
  return result;
}

std::size_t exact_slice_rank(const Tensor3& t, const ExactRankOptions& options) {
  return exact_slice_rank_with_witness(t, options).rank;
}

SliceDecomposition product_slice_decomposition(const Tensor3& f, const SliceDecomposition& df, const Tensor3& g,
                                               ProductMode mode, const std::optional<TensorDecomposition>& g_terms) {
  if (!(f.field() == g.field())) throw InvalidArgument("product_slice_decomposition: field mismatch");
  if (!verify_slice_decomposition(f, df)) throw UnverifiedInput("product_slice_decomposition: decomposition does not reproduce F");
  const auto& field = f.field();
  const auto d1 = f.dims();
  const auto d2 = g.dims();
  const std::array<std::size_t, 3> dims{d1[0] * d2[0], d1[1] * d2[1], d1[2] * d2[2]};
  SliceDecomposition out{df.p, dims, {}, {}, {}};

  // Index of the pair (i', i'') on a product axis.
  const auto at = [&](std::size_t axis, std::size_t i1, std::size_t i2) { return i1 * d2[axis] + i2; };
  // Builds a product pair table on axes (a, b) from F's pair table and a
  // G-side function of (a'', b'').
  const auto pair_table = [&](std::size_t a, std::size_t b, const std::vector<Fp>& fpair, const auto& gpair) {
    std::vector<Fp> table(dims[a] * dims[b], 0);
    for (std::size_t i1 = 0; i1 < d1[a]; ++i1)
      for (std::size_t j1 = 0; j1 < d1[b]; ++j1) {
        const Fp v = fpair[i1 * d1[b] + j1];
        if (v == 0) continue;
        for (std::size_t i2 = 0; i2 < d2[a]; ++i2)
          for (std::size_t j2 = 0; j2 < d2[b]; ++j2)
            table[at(a, i1, i2) * dims[b] + at(b, j1, j2)] = field.mul(v, gpair(i2, j2));
      }
    return table;
  };
  const auto single_table = [&](std::size_t a, const std::vector<Fp>& fsingle, const auto& gsingle) {
    std::vector<Fp> table(dims[a], 0);
    for (std::size_t i1 = 0; i1 < d1[a]; ++i1)
      for (std::size_t i2 = 0; i2 < d2[a]; ++i2) table[at(a, i1, i2)] = field.mul(fsingle[i1], gsingle(i2));
    return table;
  };

  if (mode == ProductMode::tensor_rank) {
    const TensorDecomposition gd = g_terms ? *g_terms : support_expansion(g);
    if (!verify_tensor_decomposition(g, gd)) throw UnverifiedInput("product_slice_decomposition: G decomposition does not reproduce G");
    for (const auto& ft : df.xy)
      for (const auto& r : gd.terms)
        out.xy.push_back({pair_table(0, 1, ft.pair, [&](std::size_t x, std::size_t y) { return field.mul(r.x[x], r.y[y]); }),
                          single_table(2, ft.single, [&](std::size_t z) { return r.z[z]; })});
    for (const auto& ft : df.xz)
      for (const auto& r : gd.terms)
        out.xz.push_back({pair_table(0, 2, ft.pair, [&](std::size_t x, std::size_t z) { return field.mul(r.x[x], r.z[z]); }),
                          single_table(1, ft.single, [&](std::size_t y) { return r.y[y]; })});
    for (const auto& ft : df.yz)
      for (const auto& r : gd.terms)
        out.yz.push_back({pair_table(1, 2, ft.pair, [&](std::size_t y, std::size_t z) { return field.mul(r.y[y], r.z[z]); }),
                          single_table(0, ft.single, [&](std::size_t x) { return r.x[x]; })});
  } else {
    for (const auto& ft : df.xy)
      for (std::size_t zeta = 0; zeta < d2[2]; ++zeta)
        out.xy.push_back({pair_table(0, 1, ft.pair, [&](std::size_t x, std::size_t y) { return g.at(x, y, zeta); }),
                          single_table(2, ft.single, [&](std::size_t z) { return Fp(z == zeta ? 1 : 0); })});
    for (const auto& ft : df.xz)
      for (std::size_t psi = 0; psi < d2[1]; ++psi)
        out.xz.push_back({pair_table(0, 2, ft.pair, [&](std::size_t x, std::size_t z) { return g.at(x, psi, z); }),
                          single_table(1, ft.single, [&](std::size_t y) { return Fp(y == psi ? 1 : 0); })});
    for (const auto& ft : df.yz)
      for (std::size_t xi = 0; xi < d2[0]; ++xi)
        out.yz.push_back({pair_table(1, 2, ft.pair, [&](std::size_t y, std::size_t z) { return g.at(xi, y, z); }),
                          single_table(0, ft.single, [&](std::size_t x) { return Fp(x == xi ? 1 : 0); })});
  }
  return out;
}

}  // namespace slicerank
