#include "bmv/partition.hpp"

#include <algorithm>
#include <string>

#include "bmv/error.hpp"

namespace bmv {

std::vector<SubsetMask> Partition::masks() const {
  std::vector<SubsetMask> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    SubsetMask m = 0;
    for (int e : block) m |= SubsetMask{1} << (e - 1);
    out.push_back(m);
  }
  return out;
}

namespace partition {

namespace {

void check(int d, int j) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("partition dimension d=" + std::to_string(d) + " outside [1, " +
                      std::to_string(kMaxDimension) + "]");
  }
  if (j < 1 || j > d) {
    throw DomainError("block count j=" + std::to_string(j) + " outside [1, d=" +
                      std::to_string(d) + "]");
  }
}

}  // namespace

std::vector<Partition> enumerate(int d, int j) {
  check(d, j);
  std::vector<Partition> out;
  out.reserve(count(d, j));

  // a[i] is the block index of element i+1; prefix_max[i] = max(a[0..i]).
  // A restricted growth string has a[0] = 0 and a[i] <= prefix_max[i-1] + 1,
  // which makes each partition appear exactly once in canonical order.
  std::vector<int> a(d, 0), prefix_max(d, 0);
  while (true) {
    if (prefix_max[d - 1] + 1 == j) {
      Partition p;
      p.blocks.resize(j);
      for (int i = 0; i < d; ++i) p.blocks[a[i]].push_back(i + 1);
      out.push_back(std::move(p));
    }
    // advance to the next string, pruning those that can no longer reach j blocks
    int i = d - 1;
    while (i > 0) {
      const int limit = std::min(prefix_max[i - 1] + 1, j - 1);
      if (a[i] < limit) break;
      --i;
    }
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int k = i + 1; k < d; ++k) {
      a[k] = 0;
      prefix_max[k] = prefix_max[i];
    }
  }
  return out;
}

std::uint64_t count(int d, int j) {
  check(d, j);
  // S(n, k) = k S(n-1, k) + S(n-1, k-1)
  std::vector<std::uint64_t> row(j + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= d; ++n) {
    for (int k = std::min(n, j); k >= 1; --k) row[k] = k * row[k] + row[k - 1];
    row[0] = 0;
  }
  return row[j];
}

}  // namespace partition
}  // namespace bmv
