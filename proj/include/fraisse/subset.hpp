#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fraisse {

/// Bitset over ground-set indices 0..n-1. Iteration order over subsets is the
/// ascending integer value of the mask everywhere in the library.
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 16;

constexpr SubsetMask full_mask(std::size_t n) { return n == 0 ? 0u : (SubsetMask{1} << n) - 1u; }
constexpr SubsetMask bit(std::size_t i) { return SubsetMask{1} << i; }
constexpr bool contains(SubsetMask set, std::size_t i) { return (set >> i) & 1u; }
constexpr bool is_subset(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }
constexpr std::size_t cardinality(SubsetMask m) { return static_cast<std::size_t>(std::popcount(m)); }

/// Calls f(sub) for every subset of `set`, including 0 and `set`, ascending.
template <class F>
void for_each_subset(SubsetMask set, F&& f) {
  SubsetMask sub = 0;
  while (true) {
    f(sub);
    if (sub == set) break;
    sub = (sub - set) & set;
  }
}

inline std::vector<std::size_t> members(SubsetMask set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; set != 0; ++i, set >>= 1)
    if (set & 1u) out.push_back(i);
  return out;
}

/// Maps a subset of positions {0..k-1} to the subset of points they select.
inline SubsetMask image(SubsetMask positions, const std::vector<std::size_t>& entries) {
  SubsetMask out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (contains(positions, i)) out |= bit(entries[i]);
  return out;
}

}  // namespace fraisse
