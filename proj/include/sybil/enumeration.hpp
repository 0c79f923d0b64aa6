#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "sybil/core.hpp"

namespace sybil {

/// All m! rankings of 0..m-1 in lexicographic order.
std::vector<Ranking> all_rankings(std::size_t alternatives);

/// Number of multisets of `size` items drawn from `kinds` kinds.
std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t size);

/// n choose k, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Every multiset of `size` items from `kinds` kinds, each as a
/// nondecreasing index sequence, in lexicographic order.
std::vector<std::vector<std::uint8_t>> all_multisets(std::size_t kinds, std::size_t size);

/// Calls fn(std::span<const std::uint8_t>) for every multiset in the same
/// order as all_multisets(), without materializing them.
template <typename Fn>
void for_each_multiset(std::size_t kinds, std::size_t size, Fn&& fn) {
  if (kinds == 0) {
    if (size == 0) fn(std::span<const std::uint8_t>{});
    return;
  }
  std::vector<std::uint8_t> current(size, 0);
  for (;;) {
    fn(std::span<const std::uint8_t>(current));
    std::size_t i = size;
    while (i > 0 && current[i - 1] + 1u >= kinds) {
      --i;
    }
    if (i == 0) {
      return;
    }
    const auto next = static_cast<std::uint8_t>(current[i - 1] + 1);
    std::fill(current.begin() + static_cast<std::ptrdiff_t>(i - 1), current.end(), next);
  }
}

/// Saturating helpers for universe-size bookkeeping.
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace sybil
