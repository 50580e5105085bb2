#include "slicerank/stpp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "slicerank/errors.hpp"

namespace slicerank {

namespace {

using ElementSet = std::set<GroupElement>;

ElementSet differences(const GroupSpec& g, const std::vector<GroupElement>& x, const std::vector<GroupElement>& y) {
  ElementSet out;
  for (const auto& a : x)
    for (const auto& b : y) out.insert(element_sub(g, a, b));
  return out;
}

void require_list(const GroupSpec& g, const std::vector<GroupElement>& xs, const char* name) {
  for (const auto& x : xs) g.require_conforming(x);
  const ElementSet distinct(xs.begin(), xs.end());
  if (distinct.size() != xs.size()) throw InvalidArgument(std::string("STPP list ") + name + " repeats an element");
}

BigInt size_of(const std::vector<GroupElement>& xs) { return BigInt(xs.size()); }

}  // namespace

void require_well_formed(const STPPConstruction& c) {
  for (const auto& t : c.triples) {
    require_list(c.group, t.a, "A");
    require_list(c.group, t.b, "B");
    require_list(c.group, t.c, "C");
    if (t.a.empty() || t.b.empty() || t.c.empty()) throw InvalidArgument("STPP triple has an empty set");
  }
}

StppVerdict verify_tpp(const GroupSpec& g, const std::vector<GroupElement>& a, const std::vector<GroupElement>& b,
                       const std::vector<GroupElement>& c) {
  require_list(g, a, "A");
  require_list(g, b, "B");
  require_list(g, c, "C");
  const auto da = differences(g, a, a), db = differences(g, b, b), dc = differences(g, c, c);
  const auto zero = g.zero();
  for (const auto& x : da)
    for (const auto& y : db) {
      const auto z = element_neg(g, element_add(g, x, y));
      if (dc.count(z) && !(x == zero && y == zero && z == zero))
        return {false, "nontrivial solution " + to_string(x) + " + " + to_string(y) + " + " + to_string(z) + " = 0"};
    }
  // A consequence of the property; a failure here would indicate a bug.
  if (differences(g, a, b).size() != a.size() * b.size()) return {false, "|A-B| != |A||B|"};
  return {true, ""};
}

StppVerdict verify_stpp(const STPPConstruction& c) {
  require_well_formed(c);
  const auto& g = c.group;
  const std::size_t n = c.triples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = c.triples[i];
    auto v = verify_tpp(g, t.a, t.b, t.c);
    if (!v.valid) return {false, "triple " + std::to_string(i) + " fails the triple product property: " + v.reason};
  }
  std::vector<ElementSet> s(n), t(n);
  std::map<GroupElement, std::vector<std::size_t>> u_owner;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tr = c.triples[i];
    s[i] = differences(g, tr.a, tr.b);
    t[i] = differences(g, tr.b, tr.c);
    for (const auto& u : differences(g, tr.c, tr.a)) u_owner[u].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& x : s[i])
        for (const auto& y : t[j]) {
          const auto it = u_owner.find(element_neg(g, element_add(g, x, y)));
          if (it == u_owner.end()) continue;
          for (const auto k : it->second)
            if (!(i == j && j == k))
              return {false, "s_" + std::to_string(i) + " + t_" + std::to_string(j) + " + u_" + std::to_string(k) +
                                 " = 0 with distinct indices"};
        }
  return {true, ""};
}

std::optional<PackingReport> packing_report(const STPPConstruction& c) {
  require_well_formed(c);
  const BigInt order = c.group.order();
  if (order <= 1) return std::nullopt;
  PackingReport r;
  for (const auto& t : c.triples) {
    r.sum_ab += size_of(t.a) * size_of(t.b);
    r.sum_bc += size_of(t.b) * size_of(t.c);
    r.sum_ca += size_of(t.c) * size_of(t.a);
  }
  const double log_h = log_of(order);
  const auto exponent_of = [&](const BigInt& sum) { return sum == 0 ? 0.0 : log_of(sum) / log_h; };
  r.c_ab = exponent_of(r.sum_ab);
  r.c_bc = exponent_of(r.sum_bc);
  r.c_ca = exponent_of(r.sum_ca);
  return r;
}

OmegaReport omega_bound_from_products(const std::vector<BigInt>& products, const BigInt& order) {
  const bool any_large = std::any_of(products.begin(), products.end(), [](const BigInt& p) { return p >= 2; });
  if (order < 2 || !any_large) throw InvalidArgument("inequality vacuous: need |H| >= 2 and some product >= 2");
  std::vector<double> logs;
  for (const auto& p : products) {
    if (p < 1) throw InvalidArgument("omega_bound: products must be positive");
    logs.push_back(log_of(p));
  }
  const double log_h = log_of(order);
  // f(ω) = log Σ P_i^{ω/3} - log|H|, strictly increasing in ω.
  const auto f = [&](double omega) {
    const double top = *std::max_element(logs.begin(), logs.end()) * omega / 3;
    double acc = 0;
    for (double l : logs) acc += std::exp(l * omega / 3 - top);
    return top + std::log(acc) - log_h;
  };
  constexpr double kSlack = 1e-12;
  constexpr int kIterations = 60;
  const auto bisect = [&](double lo, double hi) {
    for (int i = 0; i < kIterations; ++i) {
      const double mid = (lo + hi) / 2;
      (f(mid) <= kSlack ? lo : hi) = mid;
    }
    return lo;
  };
  OmegaReport r;
  if (f(3) <= kSlack) {
    r.omega_raw = r.omega_bound = 3;
    r.capped = true;
  } else if (f(2) <= kSlack) {
    r.omega_raw = r.omega_bound = bisect(2, 3);
  } else {
    r.omega_raw = f(0) <= kSlack ? bisect(0, 2) : 0;
    r.omega_bound = 2;
    r.clamped = true;
    r.warning = "bound < 2 clamps to 2";
  }
  return r;
}

OmegaReport omega_bound_from_sizes(const std::vector<std::array<BigInt, 3>>& sizes, const BigInt& order) {
  std::vector<BigInt> products;
  BigInt ab = 0, bc = 0, ca = 0;
  for (const auto& s : sizes) {
    products.push_back(s[0] * s[1] * s[2]);
    ab += s[0] * s[1];
    bc += s[1] * s[2];
    ca += s[2] * s[0];
  }
  auto r = omega_bound_from_products(products, order);
  const double log_h = log_of(order);
  const std::array<double, 3> exps{log_of(ab) / log_h, log_of(bc) / log_h, log_of(ca) / log_h};
  r.packing_exponents = exps;
  const double eps = (1 - *std::min_element(exps.begin(), exps.end())) / 3;
  r.epsilon_pack = eps;
  r.omega_floor = 2 / (1 - eps);
  return r;
}

OmegaReport omega_bound(const STPPConstruction& c) {
  require_well_formed(c);
  std::vector<std::array<BigInt, 3>> sizes;
  for (const auto& t : c.triples) sizes.push_back({size_of(t.a), size_of(t.b), size_of(t.c)});
  return omega_bound_from_sizes(sizes, c.group.order());
}

Rational border_lower_bound(const STPPConstruction& c) {
  Rational total{0};
  for (const auto& t : c.triples) {
    const std::int64_t n = static_cast<std::int64_t>(t.a.size()), m = static_cast<std::int64_t>(t.b.size()),
                       p = static_cast<std::int64_t>(t.c.size());
    total += Rational(n * m * p, n + m + p);
  }
  return total;
}

BorderSumFreeSet border_from_stpp(const STPPConstruction& c) {
  const auto verdict = verify_stpp(c);
  if (!verdict.valid) throw UnverifiedInput("border_from_stpp: not an STPP construction: " + verdict.reason);
  const auto& g = c.group;
  BorderSumFreeSet out;
  out.group = g;
  for (const auto& tr : c.triples) {
    const std::int64_t n = static_cast<std::int64_t>(tr.a.size()), m = static_cast<std::int64_t>(tr.b.size()),
                       p = static_cast<std::int64_t>(tr.c.size());
    // Most frequent x+y+z over [n]×[m]×[p], smallest on ties.
    std::vector<std::int64_t> freq(static_cast<std::size_t>(n + m + p + 1), 0);
    for (std::int64_t x = 1; x <= n; ++x)
      for (std::int64_t y = 1; y <= m; ++y)
        for (std::int64_t z = 1; z <= p; ++z) ++freq[static_cast<std::size_t>(x + y + z)];
    const std::int64_t r = std::max_element(freq.begin(), freq.end()) - freq.begin();

    for (std::int64_t x = 1; x <= n; ++x)
      for (std::int64_t y = 1; y <= m; ++y) {
        const std::int64_t z = r - x - y;
        if (z < 1 || z > p) continue;
        const auto& a = tr.a[static_cast<std::size_t>(x - 1)];
        const auto& b = tr.b[static_cast<std::size_t>(y - 1)];
        const auto& cc = tr.c[static_cast<std::size_t>(z - 1)];
        const auto s = element_sub(g, a, b), t = element_sub(g, b, cc), u = element_sub(g, cc, a);
        out.matching.triples.push_back({s, t, u});
        // α(s) depends on (a, b') with s = a - b', and so on; the three sum
        // to (x + y + z - r)^2 on every zero-sum triple inside one block.
        out.alpha[s] = x * x + 2 * x * y - 2 * x * r + r * r;
        out.beta[t] = y * y + 2 * y * z - 2 * y * r;
        out.gamma[u] = z * z + 2 * z * x - 2 * z * r;
      }
  }
  return out;
}

UnborderResult unborder(const BorderSumFreeSet& b, std::size_t n_power, const Guards& guards) {
  if (n_power < 1) throw InvalidArgument("unborder: N must be >= 1");
  require_well_formed(b.group, b.matching);
  const std::size_t size = b.matching.size();
  BigInt total = pow_big(BigInt(size), static_cast<unsigned>(n_power));
  if (total > guards.power_matching)
    throw GuardExceeded("unborder: |M|^N = " + to_string(total) + " exceeds the cap " + std::to_string(guards.power_matching));
  const std::size_t count = static_cast<std::size_t>(total);
  const auto layout = ProductLayout::power(b.group, n_power);

  std::vector<std::array<std::int64_t, 3>> base_w;
  for (const auto& t : b.matching.triples) base_w.push_back({b.alpha.at(t[0]), b.beta.at(t[1]), b.gamma.at(t[2])});

  // Tuple index → digits in base |M|, first coordinate most significant.
  const auto digits = [&](std::size_t idx) {
    std::vector<std::size_t> d(n_power);
    for (std::size_t pos = n_power; pos-- > 0;) {
      d[pos] = idx % size;
      idx /= size;
    }
    return d;
  };
  std::map<std::array<std::int64_t, 3>, std::size_t> tally;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::array<std::int64_t, 3> w{0, 0, 0};
    for (auto d : digits(idx))
      for (int k = 0; k < 3; ++k) w[k] += base_w[d][k];
    ++tally[w];
  }
  UnborderResult out;
  std::size_t best = 0;
  for (const auto& [w, n] : tally)  // map order is lexicographic, so the first maximum wins
    if (n > best) {
      best = n;
      out.level = w;
    }
  out.range = b.range();
  out.set.group = layout.product();
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto d = digits(idx);
    std::array<std::int64_t, 3> w{0, 0, 0};
    for (auto x : d)
      for (int k = 0; k < 3; ++k) w[k] += base_w[x][k];
    if (w != out.level) continue;
    std::array<GroupElement, 3> triple;
    for (int k = 0; k < 3; ++k) {
      std::vector<GroupElement> parts;
      for (auto x : d) parts.push_back(b.matching.triples[x][static_cast<std::size_t>(k)]);
      triple[static_cast<std::size_t>(k)] = layout.combine(parts);
    }
    out.set.matching.triples.push_back(triple);
  }
  const BigInt denom = pow_big(BigInt(2 * static_cast<std::int64_t>(n_power) * out.range + 1), 3);
  out.guaranteed = ceil_div(total, denom);
  return out;
}

std::vector<Distribution> distributions(std::size_t n, std::size_t total, const Guards& guards) {
  if (n == 0) throw InvalidArgument("distributions: need at least one index");
  const BigInt crude = pow_big(BigInt(total + 1), static_cast<unsigned>(n));
  if (crude > guards.distributions)
    throw GuardExceeded("uniformize: (N+1)^n = " + to_string(crude) + " exceeds the distribution cap " +
                        std::to_string(guards.distributions));
  std::vector<Distribution> out;
  Distribution cur(n, 0);
  std::function<void(std::size_t, std::int64_t)> gen = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      cur[i] = k;
      gen(i + 1, left - k);
    }
  };
  gen(0, static_cast<std::int64_t>(total));
  return out;
}

namespace {

BigInt multinomial(const Distribution& mu) {
  BigInt num = 1;
  std::int64_t running = 0;
  for (auto k : mu)
    for (std::int64_t j = 1; j <= k; ++j) {
      ++running;
      num = num * running / j;  // stays integral: running choose j prefix products
    }
  return num;
}

BigInt power_product(const Distribution& mu, const std::vector<BigInt>& factors) {
  BigInt out = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) out *= pow_big(factors[i], static_cast<unsigned>(mu[i]));
  return out;
}

}  // namespace

BigInt distribution_weight(const Distribution& mu, const std::vector<BigInt>& factors) {
  return multinomial(mu) * power_product(mu, factors);
}

SymbolicSTPP uniformize(const STPPConstruction& c, std::size_t n_power, const Guards& guards) {
  const auto verdict = verify_stpp(c);
  if (!verdict.valid) throw UnverifiedInput("uniformize: not an STPP construction: " + verdict.reason);
  if (n_power < 1) throw InvalidArgument("uniformize: N must be >= 1");
  const std::size_t n = c.triples.size();
  std::vector<BigInt> sa, sb, sc, ab, bc, ca;
  for (const auto& t : c.triples) {
    sa.push_back(size_of(t.a));
    sb.push_back(size_of(t.b));
    sc.push_back(size_of(t.c));
    ab.push_back(sa.back() * sb.back());
    bc.push_back(sb.back() * sc.back());
    ca.push_back(sc.back() * sa.back());
  }
  const auto all = distributions(n, n_power, guards);
  const auto pick = [&](const std::vector<BigInt>& factors) {
    const Distribution* best = nullptr;
    BigInt best_w = -1;
    for (const auto& mu : all) {
      const BigInt w = distribution_weight(mu, factors);
      if (w > best_w) {
        best_w = w;
        best = &mu;
      }
    }
    return std::make_pair(*best, best_w);
  };
  SymbolicSTPP s{c, n_power, {}, 0, 0, 0, 0, {}, 0, 0};
  const auto [mu1, p1] = pick(ab);
  const auto [mu2, p2] = pick(bc);
  const auto [mu3, p3] = pick(ca);
  s.mu = {mu1, mu2, mu3};
  s.objective = p1 * p2 * p3;
  // |Â| = ∏ |A_{u_ℓ}||B_{v_ℓ}||C_{w_ℓ}|, and cyclically for B̂, Ĉ.
  s.size_a = power_product(mu1, sa) * power_product(mu2, sb) * power_product(mu3, sc);
  s.size_b = power_product(mu1, sb) * power_product(mu2, sc) * power_product(mu3, sa);
  s.size_c = power_product(mu1, sc) * power_product(mu2, sa) * power_product(mu3, sb);
  s.triples = multinomial(mu1) * multinomial(mu2) * multinomial(mu3);
  s.packing_sums = {s.triples * s.size_a * s.size_b, s.triples * s.size_b * s.size_c, s.triples * s.size_c * s.size_a};
  s.loss_factor = pow_big(BigInt(n_power + 1), static_cast<unsigned>(3 * n));
  return s;
}

IndexTriple sample_indices(const SymbolicSTPP& s, std::mt19937_64& rng) {
  IndexTriple out;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < s.mu[k].size(); ++i) out[k].insert(out[k].end(), static_cast<std::size_t>(s.mu[k][i]), i);
    std::shuffle(out[k].begin(), out[k].end(), rng);
  }
  return out;
}

namespace {

// Set feeding block `block` (0..2) of Â/B̂/Ĉ: Â uses (A, B, C), B̂ uses
// (B, C, A), Ĉ uses (C, A, B).
const std::vector<GroupElement>& block_set(const STPPTriple& t, int which, int block) {
  switch ((which + block) % 3) {
    case 0:
      return t.a;
    case 1:
      return t.b;
    default:
      return t.c;
  }
}

void require_indices(const SymbolicSTPP& s, const IndexTriple& idx) {
  for (const auto& v : idx) {
    if (v.size() != s.power) throw InvalidArgument("index sequence has the wrong length");
    for (auto i : v)
      if (i >= s.base.triples.size()) throw InvalidArgument("index out of range");
  }
}

}  // namespace

GroupElement sample_member(const SymbolicSTPP& s, int which, const IndexTriple& idx, std::mt19937_64& rng) {
  require_indices(s, idx);
  const auto layout = ProductLayout::power(s.base.group, 3 * s.power);
  std::vector<GroupElement> parts;
  for (int block = 0; block < 3; ++block)
    for (auto i : idx[static_cast<std::size_t>(block)]) {
      const auto& set = block_set(s.base.triples[i], which, block);
      std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
      parts.push_back(set[pick(rng)]);
    }
  return layout.combine(parts);
}

bool contains(const SymbolicSTPP& s, int which, const IndexTriple& idx, const GroupElement& x) {
  require_indices(s, idx);
  const auto layout = ProductLayout::power(s.base.group, 3 * s.power);
  const auto parts = layout.split(x);
  std::size_t pos = 0;
  for (int block = 0; block < 3; ++block)
    for (auto i : idx[static_cast<std::size_t>(block)]) {
      const auto& set = block_set(s.base.triples[i], which, block);
      if (std::find(set.begin(), set.end(), parts[pos++]) == set.end()) return false;
    }
  return true;
}

std::size_t spot_check(const SymbolicSTPP& s, std::mt19937_64& rng, std::size_t trials) {
  const auto layout = ProductLayout::power(s.base.group, 3 * s.power);
  const auto& g = layout.product();
  std::bernoulli_distribution coin(0.5);
  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    // I, J, K often coincide so the forward direction is exercised too.
    const IndexTriple i = sample_indices(s, rng);
    const IndexTriple j = coin(rng) ? i : sample_indices(s, rng);
    const IndexTriple k = coin(rng) ? i : sample_indices(s, rng);
    const auto a = sample_member(s, 0, k, rng);
    const auto a2 = coin(rng) && i == k ? a : sample_member(s, 0, i, rng);
    const auto b = sample_member(s, 1, i, rng);
    const auto b2 = coin(rng) && i == j ? b : sample_member(s, 1, j, rng);
    const auto c = sample_member(s, 2, j, rng);
    const auto c2 = coin(rng) && j == k ? c : sample_member(s, 2, k, rng);
    if (!contains(s, 0, k, a) || !contains(s, 0, i, a2) || !contains(s, 1, i, b) || !contains(s, 1, j, b2) ||
        !contains(s, 2, j, c) || !contains(s, 2, k, c2)) {
      ++failures;
      continue;
    }
    auto sum = element_sub(g, a2, a);
    sum = element_add(g, sum, element_sub(g, b2, b));
    sum = element_add(g, sum, element_sub(g, c2, c));
    const bool zero = sum == g.zero();
    const bool trivial = i == j && j == k && a == a2 && b == b2 && c == c2;
    if (zero != trivial) ++failures;
  }
  return failures;
}

STPPConstruction grow_stpp(const GroupSpec& g, std::mt19937_64& rng, const GrowOptions& options) {
  const std::size_t order = g.small_order(Guards::from_environment().element_enumeration);
  const auto elems = g.elements(order);
  STPPConstruction c{g, {}};
  std::uniform_int_distribution<std::size_t> size_pick(1, std::max<std::size_t>(1, std::min(options.max_set_size, order)));
  const auto random_subset = [&](std::size_t k) {
    std::vector<GroupElement> pool = elems;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  };
  for (std::size_t attempt = 0; attempt < options.attempts && c.triples.size() < options.max_triples; ++attempt) {
    STPPConstruction trial = c;
    trial.triples.push_back({random_subset(size_pick(rng)), random_subset(size_pick(rng)), random_subset(size_pick(rng))});
    if (verify_stpp(trial).valid) c = std::move(trial);
  }
  if (c.triples.empty()) c.triples.push_back({{g.zero()}, {g.zero()}, {g.zero()}});
  return c;
}

}  // namespace slicerank
