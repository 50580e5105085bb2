#include "slicerank/io.hpp"

#include <cstdio>
#include <sstream>

#include "slicerank/errors.hpp"

namespace slicerank::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON for ") + what + ": " + e.what());
  }
}

std::array<std::size_t, 3> dims_from_json(const Json& j) {
  const auto v = get<std::vector<std::size_t>>(field(j, "dims"), "dims");
  if (v.size() != 3) throw ParseError("dims must have three entries");
  return {v[0], v[1], v[2]};
}

std::vector<Fp> fp_vector(const Json& j, const char* what) {
  std::vector<Fp> out;
  for (const auto& v : get<std::vector<std::int64_t>>(j, what)) {
    if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX)) throw ParseError(std::string(what) + ": entry out of range");
    out.push_back(static_cast<Fp>(v));
  }
  return out;
}

Json slice_terms(const std::vector<SliceTerm>& ts) {
  Json out = Json::array();
  for (const auto& t : ts) out.push_back({{"pair", t.pair}, {"single", t.single}});
  return out;
}

std::vector<SliceTerm> slice_terms_from(const Json& j) {
  std::vector<SliceTerm> out;
  for (const auto& t : j) out.push_back({fp_vector(field(t, "pair"), "pair"), fp_vector(field(t, "single"), "single")});
  return out;
}

Json matching_to_json(const ElementMatching& m) {
  Json out = Json::array();
  for (const auto& t : m.triples) out.push_back({to_json(t[0]), to_json(t[1]), to_json(t[2])});
  return out;
}

ElementMatching matching_from_json(const Json& j, const GroupSpec& g) {
  ElementMatching m;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError("matching entries must be element triples");
    m.triples.push_back({element_from_json(t[0], g), element_from_json(t[1], g), element_from_json(t[2], g)});
  }
  return m;
}

Json weight_map(const std::map<GroupElement, std::int64_t>& w) {
  Json out = Json::object();
  for (const auto& [x, v] : w) out[element_key(x)] = v;
  return out;
}

std::map<GroupElement, std::int64_t> weight_map_from(const Json& j, const GroupSpec& g) {
  std::map<GroupElement, std::int64_t> out;
  if (!j.is_object()) throw ParseError("weight map must be an object");
  for (const auto& [k, v] : j.items()) out[element_from_key(k, g)] = get<std::int64_t>(v, "weight");
  return out;
}

Json element_list(const std::vector<GroupElement>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::vector<GroupElement> element_list_from(const Json& j, const GroupSpec& g) {
  std::vector<GroupElement> out;
  for (const auto& x : j) out.push_back(element_from_json(x, g));
  return out;
}

}  // namespace

Json big_to_json(const BigInt& n) { return to_string(n); }

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  const auto s = get<std::string>(j, "integer");
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw ParseError("bad integer \"" + s + "\"");
  }
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return parse_rational(get<std::string>(j, "rational"));
}

Json to_json(const GroupSpec& g) {
  Json factors = Json::array();
  for (const auto& f : g.factors()) factors.push_back({f.modulus, f.multiplicity});
  return {{"factors", factors}};
}

GroupSpec group_from_json(const Json& j) {
  if (j.is_string()) return parse_group_spec(j.get<std::string>());
  std::vector<CyclicFactor> factors;
  for (const auto& f : field(j, "factors")) {
    const auto v = get<std::vector<std::int64_t>>(f, "factor");
    if (v.size() != 2) throw ParseError("group factors are [modulus, multiplicity] pairs");
    factors.push_back({v[0], v[1]});
  }
  try {
    return GroupSpec(std::move(factors));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const GroupElement& x) { return x.residues; }

GroupElement element_from_json(const Json& j, const GroupSpec& g) {
  GroupElement x(get<std::vector<std::int64_t>>(j, "element"));
  g.require_conforming(x);
  return x;
}

std::string element_key(const GroupElement& x) {
  std::string s;
  for (std::size_t i = 0; i < x.residues.size(); ++i) s += (i ? "," : "") + std::to_string(x.residues[i]);
  return s;
}

GroupElement element_from_key(const std::string& key, const GroupSpec& g) {
  std::vector<std::int64_t> r;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      r.push_back(std::stoll(part, &used));
      if (used != part.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad element key \"" + key + "\"");
    }
  }
  GroupElement x(std::move(r));
  g.require_conforming(x);
  return x;
}

Json to_json(const Tensor3& t) {
  Json labels = Json::object();
  const char* names[3] = {"x", "y", "z"};
  for (std::size_t a = 0; a < 3; ++a) labels[names[a]] = t.axis(a);
  const auto d = t.dims();
  return {{"p", t.field().p()}, {"dims", {d[0], d[1], d[2]}}, {"labels", labels}, {"entries", t.entries()}};
}

Tensor3 tensor_from_json(const Json& j) {
  const PrimeField f(get<std::int64_t>(field(j, "p"), "p"));
  const auto dims = dims_from_json(j);
  std::array<std::vector<Label>, 3> axes;
  const char* names[3] = {"x", "y", "z"};
  for (std::size_t a = 0; a < 3; ++a) {
    if (j.contains("labels") && j["labels"].contains(names[a]))
      axes[a] = get<std::vector<Label>>(j["labels"][names[a]], "labels");
    else
      axes[a] = token_labels(dims[a]);
    if (axes[a].size() != dims[a]) throw ParseError("label count does not match dims");
  }
  return Tensor3(f, std::move(axes), fp_vector(field(j, "entries"), "entries"));
}

Json to_json(const FpMatrix& m) { return m.row_list(); }

FpMatrix matrix_from_json(const Json& j, std::size_t cols) {
  std::vector<std::vector<Fp>> rows;
  for (const auto& r : j) {
    rows.push_back(fp_vector(r, "matrix row"));
    if (rows.back().size() != cols) throw ParseError("matrix row has the wrong length");
  }
  return FpMatrix::from_rows(rows, cols);
}

Json to_json(const SliceDecomposition& d) {
  return {{"p", d.p},
          {"dims", {d.dims[0], d.dims[1], d.dims[2]}},
          {"xy", slice_terms(d.xy)},
          {"xz", slice_terms(d.xz)},
          {"yz", slice_terms(d.yz)}};
}

SliceDecomposition slice_decomposition_from_json(const Json& j) {
  SliceDecomposition d;
  d.p = get<std::int64_t>(field(j, "p"), "p");
  d.dims = dims_from_json(j);
  d.xy = slice_terms_from(field(j, "xy"));
  d.xz = slice_terms_from(field(j, "xz"));
  d.yz = slice_terms_from(field(j, "yz"));
  validate_shape(d);
  return d;
}

Json to_json(const TensorDecomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back({{"x", t.x}, {"y", t.y}, {"z", t.z}});
  return {{"p", d.p}, {"dims", {d.dims[0], d.dims[1], d.dims[2]}}, {"terms", terms}};
}

TensorDecomposition tensor_decomposition_from_json(const Json& j) {
  TensorDecomposition d;
  d.p = get<std::int64_t>(field(j, "p"), "p");
  d.dims = dims_from_json(j);
  for (const auto& t : field(j, "terms"))
    d.terms.push_back({fp_vector(field(t, "x"), "x"), fp_vector(field(t, "y"), "y"), fp_vector(field(t, "z"), "z")});
  return d;
}

Json to_json(const TriangleDecomposition& d) {
  Json coeffs = Json::array();
  for (const auto& c : d.coefficients) coeffs.push_back({c.a, c.b, c.c, c.r});
  return {{"p", d.p},      {"k", d.k},          {"dims", {d.dims[0], d.dims[1], d.dims[2]}},
          {"z_shift", d.z_shift}, {"f", to_json(d.f)}, {"g", to_json(d.g)},
          {"h", to_json(d.h)}, {"coefficients", coeffs}};
}

TriangleDecomposition triangle_decomposition_from_json(const Json& j) {
  TriangleDecomposition d;
  d.p = get<std::int64_t>(field(j, "p"), "p");
  d.k = get<std::size_t>(field(j, "k"), "k");
  d.dims = dims_from_json(j);
  d.z_shift = j.contains("z_shift") ? get<std::size_t>(j["z_shift"], "z_shift") : 0;
  d.f = matrix_from_json(field(j, "f"), d.dims[0]);
  d.g = matrix_from_json(field(j, "g"), d.dims[1]);
  d.h = matrix_from_json(field(j, "h"), d.dims[2]);
  for (const auto& c : field(j, "coefficients")) {
    const auto v = get<std::vector<std::int64_t>>(c, "coefficient");
    if (v.size() != 4 || v[0] < 0 || v[1] < 0 || v[2] < 0 || v[3] < 0)
      throw ParseError("coefficients are [a, b, c, r] with nonnegative entries");
    d.coefficients.push_back({static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                              static_cast<std::size_t>(v[2]), static_cast<Fp>(v[3])});
  }
  validate_shape(d);
  return d;
}

Json to_json(const InstabilityCertificate& c) {
  Json bases = Json::array();
  for (const auto& b : c.bases) bases.push_back(to_json(b));
  return {{"p", c.p},
          {"bases", bases},
          {"weights", {c.weights[0], c.weights[1], c.weights[2]}},
          {"epsilon", rational_to_json(c.epsilon)},
          {"cutoff", rational_to_json(cutoff(c))}};
}

InstabilityCertificate certificate_from_json(const Json& j) {
  InstabilityCertificate c;
  c.p = get<std::int64_t>(field(j, "p"), "p");
  const auto& bases = field(j, "bases");
  const auto& weights = field(j, "weights");
  if (bases.size() != 3 || weights.size() != 3) throw ParseError("certificates need three bases and three weight vectors");
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t cols = bases[a].empty() ? 0 : bases[a][0].size();
    c.bases[a] = matrix_from_json(bases[a], cols);
    c.weights[a] = get<std::vector<std::int64_t>>(weights[a], "weights");
  }
  c.epsilon = rational_from_json(field(j, "epsilon"));
  return c;
}

Json to_json(const InstabilityVerdict& v) {
  Json out = {{"valid", v.valid}, {"reason", v.reason}, {"cutoff", rational_to_json(v.cutoff)}};
  out["violation"] = v.violation ? Json({(*v.violation)[0], (*v.violation)[1], (*v.violation)[2]}) : Json(nullptr);
  return out;
}

Json to_json(const TricoloredSumFreeSet& s) {
  return {{"group", to_json(s.group)}, {"size", s.matching.size()}, {"matching", matching_to_json(s.matching)}};
}

TricoloredSumFreeSet sumfree_from_json(const Json& j) {
  TricoloredSumFreeSet s;
  s.group = group_from_json(field(j, "group"));
  s.matching = matching_from_json(field(j, "matching"), s.group);
  return s;
}

Json to_json(const BorderSumFreeSet& b) {
  return {{"group", to_json(b.group)},   {"size", b.matching.size()},   {"matching", matching_to_json(b.matching)},
          {"alpha", weight_map(b.alpha)}, {"beta", weight_map(b.beta)}, {"gamma", weight_map(b.gamma)}};
}

BorderSumFreeSet border_from_json(const Json& j) {
  BorderSumFreeSet b;
  b.group = group_from_json(field(j, "group"));
  b.matching = matching_from_json(field(j, "matching"), b.group);
  b.alpha = weight_map_from(field(j, "alpha"), b.group);
  b.beta = weight_map_from(field(j, "beta"), b.group);
  b.gamma = weight_map_from(field(j, "gamma"), b.group);
  return b;
}

bool is_border_json(const Json& j) { return j.is_object() && j.contains("alpha"); }

Json to_json(const SumFreeVerdict& v) {
  Json out = {{"valid", v.valid}, {"reason", v.reason}};
  if (v.violation)
    out["violation"] = {to_json((*v.violation)[0]), to_json((*v.violation)[1]), to_json((*v.violation)[2])};
  else
    out["violation"] = nullptr;
  return out;
}

Json to_json(const STPPConstruction& c) {
  Json triples = Json::array();
  for (const auto& t : c.triples)
    triples.push_back({{"A", element_list(t.a)}, {"B", element_list(t.b)}, {"C", element_list(t.c)}});
  return {{"group", to_json(c.group)}, {"triples", triples}};
}

STPPConstruction stpp_from_json(const Json& j) {
  STPPConstruction c;
  c.group = group_from_json(field(j, "group"));
  for (const auto& t : field(j, "triples"))
    c.triples.push_back({element_list_from(field(t, "A"), c.group), element_list_from(field(t, "B"), c.group),
                         element_list_from(field(t, "C"), c.group)});
  require_well_formed(c);
  return c;
}

Json to_json(const OmegaReport& r) {
  Json out = {{"omega_bound", r.omega_bound}, {"omega_raw", r.omega_raw}, {"clamped", r.clamped},
              {"capped", r.capped},           {"warning", r.warning}};
  if (r.packing_exponents) {
    const auto& e = *r.packing_exponents;
    out["c_AB"] = e[0];
    out["c_BC"] = e[1];
    out["c_CA"] = e[2];
  }
  if (r.epsilon_pack) out["epsilon_pack"] = *r.epsilon_pack;
  if (r.omega_floor) out["omega_floor"] = *r.omega_floor;
  return out;
}

std::string omega_table(const OmegaReport& r) {
  std::ostringstream os;
  const auto row = [&](const char* name, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-14s %s\n", name, value.c_str());
    os << buf;
  };
  const auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return std::string(buf);
  };
  row("omega_bound", num(r.omega_bound));
  row("omega_raw", num(r.omega_raw));
  row("clamped", r.clamped ? "yes" : "no");
  row("capped", r.capped ? "yes" : "no");
  if (r.packing_exponents) {
    row("c_AB", num((*r.packing_exponents)[0]));
    row("c_BC", num((*r.packing_exponents)[1]));
    row("c_CA", num((*r.packing_exponents)[2]));
  }
  if (r.epsilon_pack) row("epsilon_pack", num(*r.epsilon_pack));
  if (r.omega_floor) row("omega_floor", num(*r.omega_floor));
  if (!r.warning.empty()) row("warning", r.warning);
  return os.str();
}

Json to_json(const PackingReport& r) {
  return {{"sum_AB", big_to_json(r.sum_ab)}, {"sum_BC", big_to_json(r.sum_bc)}, {"sum_CA", big_to_json(r.sum_ca)},
          {"c_AB", r.c_ab},                  {"c_BC", r.c_bc},                  {"c_CA", r.c_ca}};
}

Json to_json(const SymbolicSTPP& s) {
  return {{"base", to_json(s.base)},
          {"power", s.power},
          {"mu", {s.mu[0], s.mu[1], s.mu[2]}},
          {"size_A", big_to_json(s.size_a)},
          {"size_B", big_to_json(s.size_b)},
          {"size_C", big_to_json(s.size_c)},
          {"triples", big_to_json(s.triples)},
          {"packing_sums", {big_to_json(s.packing_sums[0]), big_to_json(s.packing_sums[1]), big_to_json(s.packing_sums[2])}},
          {"objective", big_to_json(s.objective)},
          {"loss_factor", big_to_json(s.loss_factor)}};
}

Json to_json(const TheoremBounds& b) {
  Json out = {{"thmA", b.thm_a}, {"generator_order", b.generator_order}};
  out["thmAprime"] = b.thm_a_prime ? Json(*b.thm_a_prime) : Json(nullptr);
  out["thmZm"] = b.thm_zm ? Json(*b.thm_zm) : Json(nullptr);
  if (b.block)
    out["block"] = {{"prime", b.block->prime}, {"q", b.block->prime_power}, {"n", b.block->count}};
  else
    out["block"] = nullptr;
  return out;
}

}  // namespace slicerank::io
