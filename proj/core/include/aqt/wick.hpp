#pragma once

// Pair partitions of {0, ..., m-1} and Wick sums over them.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace aqt {

using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

/// (m-1)!! for even m, 0 for odd m; 1 for m = 0.
std::uint64_t pair_partition_count(std::size_t m);

/// Calls visit(const Pairing&) for every pair partition of {0..m-1}. Order is
/// fixed: the smallest open index is paired with each larger open index in
/// increasing order, recursively. Pairs are (i, j) with i < j.
template <class Visit>
void for_each_pairing(std::size_t m, Visit&& visit) {
  if (m % 2 != 0) return;
  Pairing current;
  current.reserve(m / 2);
  std::vector<char> used(m, 0);
  auto recurse = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < m && used[first]) ++first;
    if (first == m) {
      visit(static_cast<const Pairing&>(current));
      return;
    }
    used[first] = 1;
    for (std::size_t j = first + 1; j < m; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      current.emplace_back(first, j);
      self(self);
      current.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };
  recurse(recurse);
}

/// sum over pairings of prod pair_value(i, j). The product for a partial
/// pairing is carried down the recursion, so each partition costs O(1)
/// multiplications; the summation order is the enumeration order.
template <class T, class PairValue>
T wick_sum(std::size_t m, PairValue&& pair_value) {
  if (m % 2 != 0) return T(0);
  if (m == 0) return T(1);
  std::vector<std::vector<T>> table(m, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) table[i][j] = pair_value(i, j);
  std::vector<char> used(m, 0);
  T total(0);
  auto recurse = [&](auto&& self, std::size_t first, const T& prefix) -> void {
    while (first < m && used[first]) ++first;
    if (first == m) {
      total += prefix;
      return;
    }
    used[first] = 1;
    for (std::size_t j = first + 1; j < m; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      self(self, first + 1, prefix * table[first][j]);
      used[j] = 0;
    }
    used[first] = 0;
  };
  recurse(recurse, 0, T(1));
  return total;
}

}  // namespace aqt
