#pragma once

#include <cstddef>
#include <cstdint>

namespace slicerank {

// Size limits for operations whose cost grows super-polynomially. Defaults
// keep every call desk-scale; the SLICERANK_GUARD environment variable
// overrides them ("off" disables, an integer k multiplies the count caps).
struct Guards {
  std::size_t tensor_entries = std::size_t{1} << 24;
  std::size_t element_enumeration = std::size_t{1} << 22;
  // exact_slice_rank: every axis at most this long, field at most this prime.
  std::size_t rank_axis = 4;
  std::int64_t rank_prime = 3;
  // certificate search: axis length and prime caps.
  std::size_t certificate_axis = 3;
  std::int64_t certificate_prime = 3;
  std::size_t sumfree_order = 9;
  std::size_t power_matching = std::size_t{1} << 20;
  std::size_t distributions = std::size_t{1} << 16;
  std::size_t dp_cells = std::size_t{1} << 26;

  static Guards defaults();
  // defaults() adjusted by SLICERANK_GUARD.
  static Guards from_environment();
  static Guards unlimited();
};

}  // namespace slicerank
