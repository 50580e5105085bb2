#include "slicerank/sumfree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <tuple>

#include "slicerank/errors.hpp"
#include "slicerank/parallel.hpp"
#include "slicerank/rates.hpp"

namespace slicerank {

std::int64_t BorderSumFreeSet::range() const {
  std::int64_t r = 0;
  for (const auto& t : matching.triples) {
    r = std::max({r, std::abs(alpha.at(t[0])), std::abs(beta.at(t[1])), std::abs(gamma.at(t[2]))});
  }
  return r;
}

void require_well_formed(const GroupSpec& g, const ElementMatching& m) {
  for (const auto& t : m.triples)
    for (const auto& x : t) g.require_conforming(x);
  if (!m.projections_injective()) throw InvalidArgument("malformed matching: a projection repeats an element");
}

namespace {

bool sums_to_zero(const GroupSpec& g, const GroupElement& s, const GroupElement& t, const GroupElement& u) {
  const auto& mod = g.moduli();
  for (std::size_t i = 0; i < mod.size(); ++i)
    if ((s.residues[i] + t.residues[i] + u.residues[i]) % mod[i] != 0) return false;
  return true;
}

// Scans (i, j) pairs; for each, the only k that can close a zero sum is the
// index of -(s_i + t_j) in U. `off_ok(i, j, k)` decides whether an off-matching
// zero-sum triple is acceptable and `on_ok(i)` checks the extra on-matching
// condition.
template <class OffOk, class OnOk>
SumFreeVerdict scan(const GroupSpec& g, const ElementMatching& m, OffOk off_ok, OnOk on_ok) {
  std::map<GroupElement, std::size_t> u_index;
  for (std::size_t k = 0; k < m.size(); ++k) u_index.emplace(m.triples[k][2], k);
  const auto report = [&](std::size_t i, std::size_t j, std::size_t k, std::string why) {
    SumFreeVerdict v;
    v.reason = std::move(why);
    v.violation = std::array<GroupElement, 3>{m.triples[i][0], m.triples[j][1], m.triples[k][2]};
    return v;
  };
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto& s = m.triples[i][0];
      const auto& t = m.triples[j][1];
      const auto it = u_index.find(element_neg(g, element_add(g, s, t)));
      const std::optional<std::size_t> zero_k = it == u_index.end() ? std::nullopt : std::optional(it->second);
      // Candidate failures for this (i, j), visited in increasing k.
      std::optional<std::size_t> off_k;
      if (zero_k && !(i == j && *zero_k == i) && !off_ok(i, j, *zero_k)) off_k = zero_k;
      if (i == j) {
        const bool on_zero = sums_to_zero(g, s, t, m.triples[i][2]);
        const bool on_fail = !on_zero || !on_ok(i);
        if (on_fail && (!off_k || i < *off_k))
          return report(i, i, i, on_zero ? "weights do not cancel on the matching" : "matching triple does not sum to zero");
      }
      if (off_k) return report(i, j, *off_k, "off-matching triple sums to zero");
    }
  return {true, "", std::nullopt};
}

}  // namespace

SumFreeVerdict verify_sumfree(const TricoloredSumFreeSet& s) {
  require_well_formed(s.group, s.matching);
  return scan(
      s.group, s.matching, [](std::size_t, std::size_t, std::size_t) { return false; }, [](std::size_t) { return true; });
}

SumFreeVerdict verify_border(const BorderSumFreeSet& b) {
  require_well_formed(b.group, b.matching);
  const auto& m = b.matching;
  const auto weight = [&](const std::map<GroupElement, std::int64_t>& w, const GroupElement& x, const char* name) {
    const auto it = w.find(x);
    if (it == w.end()) throw InvalidArgument(std::string("border set: ") + name + " has no value for " + to_string(x));
    return it->second;
  };
  std::vector<std::int64_t> a(m.size()), be(m.size()), c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    a[i] = weight(b.alpha, m.triples[i][0], "alpha");
    be[i] = weight(b.beta, m.triples[i][1], "beta");
    c[i] = weight(b.gamma, m.triples[i][2], "gamma");
  }
  auto v = scan(
      b.group, m, [&](std::size_t i, std::size_t j, std::size_t k) { return a[i] + be[j] + c[k] > 0; },
      [&](std::size_t i) { return a[i] + be[i] + c[i] == 0; });
  if (!v.valid && v.reason == "off-matching triple sums to zero") v.reason = "off-matching zero-sum triple has weight <= 0";
  return v;
}

namespace {

struct Pair {
  std::uint32_t s, t, u;
};

class Searcher {
 public:
  Searcher(std::size_t n, std::vector<std::vector<std::uint32_t>> add, std::vector<std::uint32_t> neg)
      : n_(n), add_(std::move(add)), neg_(std::move(neg)) {
    for (std::uint32_t s = 0; s < n_; ++s)
      for (std::uint32_t t = 0; t < n_; ++t) pairs_.push_back({s, t, neg_[add_[s][t]]});
    used_s_.assign(n_, 0);
    used_t_.assign(n_, 0);
    used_u_.assign(n_, 0);
    cross_.assign(n_, 0);
  }

  std::size_t pair_count() const { return pairs_.size(); }

  // Best extension of the chosen prefix starting with pair `first`.
  void run_from(std::size_t first) {
    if (!valid(pairs_[first])) return;
    push(pairs_[first]);
    chosen_.push_back(first);
    dfs(first + 1);
    chosen_.pop_back();
    pop();
  }

  std::size_t best_size = 0;
  std::vector<std::size_t> best;
  std::uint64_t nodes = 0;

 private:
  bool valid(const Pair& p) const {
    if (used_s_[p.s] || used_t_[p.t] || used_u_[p.u]) return false;
    if (cross_[add_[p.s][p.t]]) return false;
    for (const auto& q : current_) {
      if (used_u_[neg_[add_[p.s][q.t]]]) return false;
      if (used_u_[neg_[add_[q.s][p.t]]]) return false;
    }
    return true;
  }

  void push(const Pair& p) {
    for (const auto& q : current_) {
      ++cross_[add_[p.s][q.t]];
      ++cross_[add_[q.s][p.t]];
    }
    used_s_[p.s] = used_t_[p.t] = used_u_[p.u] = 1;
    current_.push_back(p);
  }

  void pop() {
    const Pair p = current_.back();
    current_.pop_back();
    used_s_[p.s] = used_t_[p.t] = used_u_[p.u] = 0;
    for (const auto& q : current_) {
      --cross_[add_[p.s][q.t]];
      --cross_[add_[q.s][p.t]];
    }
  }

  void dfs(std::size_t from) {
    ++nodes;
    if (current_.size() > best_size) {
      best_size = current_.size();
      best = chosen_;
    }
    std::vector<std::size_t> options;
    std::vector<char> fs(n_, 0), ft(n_, 0), fu(n_, 0);
    std::size_t ds = 0, dt = 0, du = 0;
    for (std::size_t i = from; i < pairs_.size(); ++i) {
      const auto& p = pairs_[i];
      if (!valid(p)) continue;
      options.push_back(i);
      if (!fs[p.s]++) ++ds;
      if (!ft[p.t]++) ++dt;
      if (!fu[p.u]++) ++du;
    }
    // Each further triple needs a fresh s, t and u among the candidates.
    if (current_.size() + std::min({ds, dt, du}) <= best_size) return;
    for (std::size_t k = 0; k < options.size(); ++k) {
      const std::size_t i = options[k];
      if (current_.size() + 1 + (options.size() - k - 1) <= best_size) return;
      push(pairs_[i]);
      chosen_.push_back(i);
      dfs(i + 1);
      chosen_.pop_back();
      pop();
    }
  }

  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<Pair> pairs_;
  std::vector<char> used_s_, used_t_, used_u_;
  std::vector<int> cross_;  // multiset {s_i + t_j : i ≠ j}
  std::vector<Pair> current_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

SumFreeSearchResult max_sumfree_exhaustive(const GroupSpec& g, const SumFreeSearchOptions& options) {
  const std::size_t n = g.small_order(options.guards.sumfree_order);
  if (n > options.guards.sumfree_order)
    throw GuardExceeded("max_sumfree_exhaustive: |H| = " + std::to_string(n) + " exceeds the cap " +
                        std::to_string(options.guards.sumfree_order));
  const auto elems = g.elements(n);
  std::vector<std::vector<std::uint32_t>> add(n, std::vector<std::uint32_t>(n));
  std::vector<std::uint32_t> neg(n);
  for (std::size_t a = 0; a < n; ++a) {
    neg[a] = static_cast<std::uint32_t>(g.index_of(element_neg(g, elems[a])));
    for (std::size_t b = 0; b < n; ++b)
      add[a][b] = static_cast<std::uint32_t>(g.index_of(element_add(g, elems[a], elems[b])));
  }

  const std::size_t first_choices = n * n;
  const std::size_t workers = chunk_count(first_choices, options.threads);
  std::vector<Searcher> searchers(workers, Searcher(n, add, neg));
  parallel_chunks(first_choices, options.threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t first = begin; first < end; ++first) searchers[w].run_from(first);
  });

  // Earlier chunks hold lexicographically smaller witnesses; keep the first
  // chunk reaching the maximum.
  SumFreeSearchResult out;
  const Searcher* winner = nullptr;
  for (const auto& s : searchers) {
    out.nodes += s.nodes;
    if (!winner || s.best_size > winner->best_size) winner = &s;
  }
  out.size = winner->best_size;
  out.witness.group = g;
  for (const auto i : winner->best) {
    const std::size_t s = i / n, t = i % n;
    out.witness.matching.triples.push_back({elems[s], elems[t], elems[neg[add[s][t]]]});
  }
  return out;
}

TheoremBounds theorem_bound(const GroupSpec& g) {
  const auto c = constants();
  TheoremBounds b;
  const double log_h = g.log_order();
  const auto pd = crt_primary_decomposition(g);
  for (const auto& blk : pd.blocks()) b.generator_order = std::max(b.generator_order, blk.prime_power);
  if (g.is_trivial()) {
    b.thm_a = 3;
    return b;
  }
  b.thm_a = 3 * std::exp((1 - c.epsilon / static_cast<double>(b.generator_order)) * log_h);
  if (pd.blocks().size() == 1) {
    const double q = static_cast<double>(pd.blocks().front().prime_power);
    b.thm_a_prime = 3 * std::exp((1 - c.delta / std::log(q)) * log_h);
  }
  const auto blk = largest_primary_block(g);
  b.block = blk;
  const double j = rate_J(static_cast<double>(blk.prime_power)).value;
  b.thm_zm = 3 * std::exp(log_h + static_cast<double>(blk.count) * std::log(j));
  return b;
}

}  // namespace slicerank
