#pragma once

#include <json.hpp>

#include "slicerank/groups.hpp"
#include "slicerank/instability.hpp"
#include "slicerank/numeric.hpp"
#include "slicerank/slice.hpp"
#include "slicerank/stpp.hpp"
#include "slicerank/sumfree.hpp"
#include "slicerank/tensor.hpp"
#include "slicerank/triangle.hpp"

namespace slicerank::io {

using Json = nlohmann::ordered_json;

// Big integers are written as decimal strings; readers accept strings or
// JSON integers. Rationals are strings "p/q".
Json big_to_json(const BigInt& n);
BigInt big_from_json(const Json& j);
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"factors":[[m,k],...]}; readers also accept the text grammar "Z2^3 x Z4".
Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const GroupElement& x);
GroupElement element_from_json(const Json& j, const GroupSpec& g);
// Weight-map key: residues joined by commas.
std::string element_key(const GroupElement& x);
GroupElement element_from_key(const std::string& key, const GroupSpec& g);

Json to_json(const Tensor3& t);
Tensor3 tensor_from_json(const Json& j);

Json to_json(const FpMatrix& m);
FpMatrix matrix_from_json(const Json& j, std::size_t cols);

Json to_json(const SliceDecomposition& d);
SliceDecomposition slice_decomposition_from_json(const Json& j);
Json to_json(const TensorDecomposition& d);
TensorDecomposition tensor_decomposition_from_json(const Json& j);
Json to_json(const TriangleDecomposition& d);
TriangleDecomposition triangle_decomposition_from_json(const Json& j);
Json to_json(const InstabilityCertificate& c);
InstabilityCertificate certificate_from_json(const Json& j);
Json to_json(const InstabilityVerdict& v);

Json to_json(const TricoloredSumFreeSet& s);
TricoloredSumFreeSet sumfree_from_json(const Json& j);
Json to_json(const BorderSumFreeSet& b);
BorderSumFreeSet border_from_json(const Json& j);
// Border sets carry weight maps; plain sets do not.
bool is_border_json(const Json& j);
Json to_json(const SumFreeVerdict& v);

Json to_json(const STPPConstruction& c);
STPPConstruction stpp_from_json(const Json& j);
Json to_json(const OmegaReport& r);
std::string omega_table(const OmegaReport& r);
Json to_json(const PackingReport& r);
Json to_json(const SymbolicSTPP& s);
Json to_json(const TheoremBounds& b);

}  // namespace slicerank::io
