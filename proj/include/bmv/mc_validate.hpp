#pragma once

#include <cstdint>

#include "bmv/quadrature.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

struct McReport {
  std::int64_t n;
  std::int64_t blocks;
  std::uint64_t seed;
  /// max over the grid of |empirical copula - max_copula_cdf|.
  double sup_distance;
  /// blocks * mean over the grid of the squared difference.
  double cvm_distance;
  /// 3 / sqrt(blocks).
  double threshold;
  bool pass;
};

namespace mc {

inline constexpr std::int64_t kMinBlocks = 1000;
/// Grid points per axis, at k/(kGridPoints+1).
inline constexpr int kGridPoints = 9;

/// Simulates `blocks` blocks of n vine draws, maps the componentwise
/// maxima to uniforms through the known margins and compares their
/// empirical CDF with the block-maxima copula on the grid.
McReport validate(const Vine3Spec& spec, std::int64_t n, std::int64_t blocks,
                  std::uint64_t seed, const QuadratureConfig& q = {});

}  // namespace mc
}  // namespace bmv
