#include "slicerank/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "slicerank/errors.hpp"

namespace slicerank {

std::string to_string(const GroupElement& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.residues.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.residues[i]);
  }
  return out + ")";
}

GroupSpec::GroupSpec(std::vector<CyclicFactor> factors) {
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& f : factors) {
    if (f.modulus < 2) throw InvalidArgument("cyclic modulus must be >= 2, got " + std::to_string(f.modulus));
    if (f.multiplicity < 0) throw InvalidArgument("negative multiplicity");
    if (f.multiplicity > 0) merged[f.modulus] += f.multiplicity;
  }
  for (const auto& [m, k] : merged) {
    factors_.push_back({m, k});
    for (std::int64_t i = 0; i < k; ++i) moduli_.push_back(m);
  }
}

GroupSpec GroupSpec::cyclic(std::int64_t modulus, std::int64_t multiplicity) {
  return GroupSpec({{modulus, multiplicity}});
}

BigInt GroupSpec::order() const {
  BigInt n = 1;
  for (auto m : moduli_) n *= m;
  return n;
}

double GroupSpec::log_order() const {
  double s = 0;
  for (auto m : moduli_) s += std::log(static_cast<double>(m));
  return s;
}

std::size_t GroupSpec::small_order(std::size_t cap) const {
  std::size_t n = 1;
  for (auto m : moduli_) {
    if (n > cap / static_cast<std::size_t>(m))
      throw GuardExceeded("group " + to_string() + " has more than " + std::to_string(cap) + " elements");
    n *= static_cast<std::size_t>(m);
  }
  if (n > cap) throw GuardExceeded("group " + to_string() + " has more than " + std::to_string(cap) + " elements");
  return n;
}

GroupElement GroupSpec::zero() const { return GroupElement(std::vector<std::int64_t>(rank(), 0)); }

bool GroupSpec::conforms(const GroupElement& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (x.residues[i] < 0 || x.residues[i] >= moduli_[i]) return false;
  return true;
}

void GroupSpec::require_conforming(const GroupElement& x) const {
  if (x.size() != rank())
    throw InvalidArgument("element " + slicerank::to_string(x) + " has " + std::to_string(x.size()) +
                          " coordinates, group " + to_string() + " has " + std::to_string(rank()));
  if (!conforms(x)) throw InvalidArgument("element " + slicerank::to_string(x) + " has residues out of range for " + to_string());
}

std::vector<GroupElement> GroupSpec::elements(std::size_t cap) const {
  const std::size_t n = small_order(cap);
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::size_t GroupSpec::index_of(const GroupElement& x) const {
  require_conforming(x);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(x.residues[i]);
  return idx;
}

GroupElement GroupSpec::element_at(std::size_t index) const {
  std::vector<std::int64_t> r(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    const auto m = static_cast<std::size_t>(moduli_[i]);
    r[i] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  if (index != 0) throw InvalidArgument("element index out of range");
  return GroupElement(std::move(r));
}

std::string GroupSpec::to_string() const {
  if (factors_.empty()) return "trivial";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += " x ";
    out += "Z" + std::to_string(f.modulus);
    if (f.multiplicity != 1) out += "^" + std::to_string(f.multiplicity);
  }
  return out;
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse() {
    std::vector<CyclicFactor> factors;
    skip_space();
    factors.push_back(factor());
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != 'x' && text_[pos_] != 'X' && text_[pos_] != '*')
        fail("expected 'x' between factors");
      ++pos_;
      skip_space();
      factors.push_back(factor());
      skip_space();
    }
    for (const auto& f : factors)
      if (f.modulus < 2) throw ParseError("modulus must be >= 2 in \"" + std::string(text_) + "\"");
    return GroupSpec(std::move(factors));
  }

 private:
  CyclicFactor factor() {
    if (pos_ >= text_.size() || text_[pos_] != 'Z') fail("expected 'Z'");
    ++pos_;
    CyclicFactor f;
    f.modulus = number();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      f.multiplicity = number();
      if (f.multiplicity < 1) fail("exponent must be >= 1");
    }
    return f;
  }

  std::int64_t number() {
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("group spec \"" + std::string(text_) + "\": " + what + " at position " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpec parse_group_spec(std::string_view text) { return SpecParser(text).parse(); }

GroupElement element_add(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
  g.require_conforming(x);
  g.require_conforming(y);
  GroupElement out = x;
  const auto& m = g.moduli();
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.residues[i] += y.residues[i];
    if (out.residues[i] >= m[i]) out.residues[i] -= m[i];
  }
  return out;
}

GroupElement element_neg(const GroupSpec& g, const GroupElement& x) {
  g.require_conforming(x);
  GroupElement out = x;
  const auto& m = g.moduli();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (out.residues[i] != 0) out.residues[i] = m[i] - out.residues[i];
  return out;
}

GroupElement element_sub(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
  return element_add(g, x, element_neg(g, y));
}

std::int64_t exponent(const GroupSpec& g) {
  std::int64_t e = 1;
  for (const auto& f : g.factors()) e = std::lcm(e, f.modulus);
  return e;
}

ProductLayout::ProductLayout(std::vector<GroupSpec> components) : components_(std::move(components)) {
  std::vector<CyclicFactor> all;
  for (const auto& c : components_)
    for (const auto& f : c.factors()) all.push_back(f);
  product_ = GroupSpec(std::move(all));

  // Within each modulus block of the product, component j's coordinates of
  // that modulus follow those of components 0..j-1.
  std::map<std::int64_t, std::size_t> block_start;
  {
    std::size_t pos = 0;
    for (const auto& f : product_.factors()) {
      block_start[f.modulus] = pos;
      pos += static_cast<std::size_t>(f.multiplicity);
    }
  }
  std::map<std::int64_t, std::size_t> filled;
  positions_.resize(components_.size());
  for (std::size_t j = 0; j < components_.size(); ++j) {
    for (auto m : components_[j].moduli()) {
      positions_[j].push_back(block_start[m] + filled[m]);
      ++filled[m];
    }
  }
}

ProductLayout ProductLayout::power(const GroupSpec& g, std::size_t copies) {
  return ProductLayout(std::vector<GroupSpec>(copies, g));
}

GroupElement ProductLayout::combine(std::span<const GroupElement> parts) const {
  if (parts.size() != components_.size()) throw InvalidArgument("product combine: wrong number of parts");
  std::vector<std::int64_t> r(product_.rank(), 0);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    components_[j].require_conforming(parts[j]);
    for (std::size_t c = 0; c < parts[j].size(); ++c) r[positions_[j][c]] = parts[j].residues[c];
  }
  return GroupElement(std::move(r));
}

std::vector<GroupElement> ProductLayout::split(const GroupElement& x) const {
  product_.require_conforming(x);
  std::vector<GroupElement> out;
  out.reserve(components_.size());
  for (std::size_t j = 0; j < components_.size(); ++j) {
    std::vector<std::int64_t> r;
    r.reserve(positions_[j].size());
    for (auto p : positions_[j]) r.push_back(x.residues[p]);
    out.emplace_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw InvalidArgument("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::int64_t, int> prime_power_parts(std::int64_t n) {
  if (n < 2) return {0, 0};
  const auto f = factorize(n);
  if (f.size() != 1) return {0, 0};
  return f.front();
}

std::int64_t prime_power_count(std::int64_t m) {
  std::int64_t r = 0;
  for (std::int64_t q = 2; q <= m; ++q)
    if (prime_power_parts(q).first != 0) ++r;
  return r;
}

PrimaryDecomposition crt_primary_decomposition(const GroupSpec& g) {
  PrimaryDecomposition d;
  d.source_ = g;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;  // (p, q) -> n
  std::vector<std::vector<std::int64_t>> parts;  // prime powers of each source coordinate
  for (auto m : g.moduli()) {
    std::vector<std::int64_t> qs;
    for (auto [p, e] : factorize(m)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      ++counts[{p, q}];
      qs.push_back(q);
    }
    parts.push_back(std::move(qs));
  }
  std::vector<CyclicFactor> factors;
  for (const auto& [pq, n] : counts) {
    d.blocks_.push_back({pq.first, pq.second, n});
    factors.push_back({pq.second, n});
  }
  d.primary_ = GroupSpec(std::move(factors));

  std::map<std::int64_t, std::size_t> next;  // modulus -> next free primary coordinate
  {
    std::size_t pos = 0;
    for (const auto& f : d.primary_.factors()) {
      next[f.modulus] = pos;
      pos += static_cast<std::size_t>(f.multiplicity);
    }
  }
  for (const auto& qs : parts) {
    std::vector<PrimaryDecomposition::Target> t;
    for (auto q : qs) t.push_back({next[q]++, q});
    d.targets_.push_back(std::move(t));
  }
  return d;
}

GroupElement PrimaryDecomposition::to_primary(const GroupElement& x) const {
  source_.require_conforming(x);
  std::vector<std::int64_t> r(primary_.rank(), 0);
  for (std::size_t i = 0; i < targets_.size(); ++i)
    for (const auto& t : targets_[i]) r[t.coordinate] = x.residues[i] % t.modulus;
  return GroupElement(std::move(r));
}

namespace {

// Inverse of a modulo m (gcd(a, m) = 1).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InvalidArgument("mod_inverse: not coprime");
  return ((x % m) + m) % m;
}

}  // namespace

GroupElement PrimaryDecomposition::from_primary(const GroupElement& y) const {
  primary_.require_conforming(y);
  std::vector<std::int64_t> r(source_.rank(), 0);
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    // Garner-style CRT over pairwise coprime prime powers.
    std::int64_t value = 0, modulus = 1;
    for (const auto& t : targets_[i]) {
      const std::int64_t residue = y.residues[t.coordinate];
      const std::int64_t diff = ((residue - value % t.modulus) % t.modulus + t.modulus) % t.modulus;
      const std::int64_t k = static_cast<std::int64_t>(
          (static_cast<__int128>(diff) * mod_inverse(modulus % t.modulus, t.modulus)) % t.modulus);
      value += modulus * k;
      modulus *= t.modulus;
    }
    r[i] = value;
  }
  return GroupElement(std::move(r));
}

PrimaryBlock largest_primary_block(const GroupSpec& g) {
  const auto d = crt_primary_decomposition(g);
  if (d.blocks().empty()) return {1, 1, 0};
  PrimaryBlock best = d.blocks().front();
  for (const auto& b : d.blocks())
    if (b.count > best.count || (b.count == best.count && b.prime_power < best.prime_power)) best = b;
  return best;
}

namespace {

void partitions(std::int64_t n, std::int64_t max_part, std::vector<std::int64_t>& cur,
                std::vector<std::vector<std::int64_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GroupSpec> abelian_groups_of_order(std::int64_t n) {
  if (n < 1) throw InvalidArgument("group order must be positive");
  std::vector<std::vector<CyclicFactor>> acc{{}};
  for (auto [p, e] : factorize(n == 1 ? 1 : n)) {
    std::vector<std::vector<std::int64_t>> parts;
    std::vector<std::int64_t> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<CyclicFactor>> next;
    for (const auto& base : acc) {
      for (const auto& part : parts) {
        auto f = base;
        for (auto k : part) {
          std::int64_t q = 1;
          for (std::int64_t i = 0; i < k; ++i) q *= p;
          f.push_back({q, 1});
        }
        next.push_back(std::move(f));
      }
    }
    acc = std::move(next);
  }
  std::vector<GroupSpec> out;
  for (auto& f : acc) out.emplace_back(std::move(f));
  return out;
}

}  // namespace slicerank
