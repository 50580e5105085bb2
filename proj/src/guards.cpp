#include "slicerank/guards.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "slicerank/errors.hpp"

namespace slicerank {

Guards Guards::defaults() { return Guards{}; }

Guards Guards::unlimited() {
  constexpr auto big = std::numeric_limits<std::size_t>::max() / 4;
  Guards g;
  g.tensor_entries = big;
  g.element_enumeration = big;
  g.rank_axis = big;
  g.rank_prime = std::numeric_limits<std::int64_t>::max() / 4;
  g.certificate_axis = big;
  g.certificate_prime = std::numeric_limits<std::int64_t>::max() / 4;
  g.sumfree_order = big;
  g.power_matching = big;
  g.distributions = big;
  g.dp_cells = big;
  return g;
}

Guards Guards::from_environment() {
  const char* raw = std::getenv("SLICERANK_GUARD");
  if (raw == nullptr || *raw == '\0') return defaults();
  const std::string value(raw);
  if (value == "off" || value == "unlimited") return unlimited();
  std::size_t factor = 0;
  try {
    factor = std::stoul(value);
  } catch (const std::exception&) {
    throw InvalidArgument("SLICERANK_GUARD must be \"off\" or a positive integer, got \"" + value + "\"");
  }
  if (factor == 0) throw InvalidArgument("SLICERANK_GUARD factor must be positive");
  Guards g;
  g.tensor_entries *= factor;
  g.element_enumeration *= factor;
  g.sumfree_order *= factor;
  g.power_matching *= factor;
  g.distributions *= factor;
  g.dp_cells *= factor;
  return g;
}

}  // namespace slicerank
