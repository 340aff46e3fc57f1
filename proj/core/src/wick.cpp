#include "aqt/wick.hpp"

namespace aqt {

std::uint64_t pair_partition_count(std::size_t m) {
  if (m % 2 != 0) return 0;
  std::uint64_t c = 1;
  for (std::size_t k = m; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k - 1);
  return c;
}

}  // namespace aqt
