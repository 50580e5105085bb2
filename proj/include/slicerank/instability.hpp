#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicerank/guards.hpp"
#include "slicerank/linalg.hpp"
#include "slicerank/numeric.hpp"
#include "slicerank/slice.hpp"
#include "slicerank/tensor.hpp"
#include "slicerank/triangle.hpp"

namespace slicerank {

// Bases (rows are functions on an axis), integer weights per basis
// function, and ε. Valid for F when every nonzero coefficient r_{abc} of F in
// these bases has u_a + v_b + w_c <= R with
// R = (u_avg + v_avg + w_avg) - ε (u_max - u_min + v_max - v_min + w_max - w_min).
struct InstabilityCertificate {
  std::int64_t p = 2;
  std::array<FpMatrix, 3> bases;
  std::array<std::vector<std::int64_t>, 3> weights;
  Rational epsilon{0};
};

struct InstabilityVerdict {
  bool valid = false;
  std::string reason;
  Rational cutoff{0};
  // First offending coefficient index (a, b, c) in row-major order.
  std::optional<std::array<std::size_t, 3>> violation;
};

Rational cutoff(const InstabilityCertificate& c);
bool trivial_weights(const InstabilityCertificate& c);

// Throws InvalidArgument when a basis table is not square and invertible or
// the weight vectors do not match the axes.
InstabilityVerdict verify_instability_certificate(const Tensor3& t, const InstabilityCertificate& c);

// Weights -1 on the univariate slice factors (reduced to an independent set
// when they are not), 0 on a completion; ε is the largest value keeping
// R >= -1. Throws InvalidArgument when size(d) >= the smallest axis.
InstabilityCertificate instability_from_slice(const SliceDecomposition& d);

// Weights u_a = a, v_b = b, w_c = c on the decomposition's own functions,
// which must form bases; ε = 1/6. The shift of the decomposition is undone
// so the certificate applies to the unshifted tensor.
InstabilityCertificate instability_from_triangle(const TriangleDecomposition& d);

// Every basis of F_p^n up to reordering and rescaling of its vectors: rows
// have leading coefficient 1 and are in increasing lexicographic order.
std::vector<FpMatrix> enumerate_frames(const PrimeField& f, std::size_t n);

struct CertificateSearchOptions {
  Guards guards = Guards::from_environment();
  std::size_t threads = 0;
  // Weights range over {0, ..., max_weight} on each axis (translation makes
  // the minimum 0 without loss).
  std::int64_t max_weight = 2;
};

// Searches all frame triples (as dual bases) and small weights for a
// certificate with ε > 0. Returns the first hit in enumeration order, or an
// empty optional when none exists within the search space. Guarded by
// Guards::certificate_axis and Guards::certificate_prime.
std::optional<InstabilityCertificate> find_instability_certificate(const Tensor3& t,
                                                                    const CertificateSearchOptions& options = {});

}  // namespace slicerank
