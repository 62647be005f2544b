#pragma once

#include <cstdint>
#include <vector>

namespace bmv {

/// Bitmask over {1..d}: bit (i-1) set when i belongs to the subset.
using SubsetMask = std::uint32_t;

/// Set partition of {1..d} in canonical form: blocks ordered by smallest
/// element, elements ascending within a block.
struct Partition {
  std::vector<std::vector<int>> blocks;

  /// Blocks as bitmasks, same order as `blocks`.
  std::vector<SubsetMask> masks() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

namespace partition {

inline constexpr int kMaxDimension = 12;

/// All partitions of {1..d} into exactly j blocks, in restricted-growth-string
/// lexicographic order. Requires 1 <= j <= d <= kMaxDimension.
std::vector<Partition> enumerate(int d, int j);

/// Stirling number of the second kind S(d, j).
std::uint64_t count(int d, int j);

}  // namespace partition
}  // namespace bmv
