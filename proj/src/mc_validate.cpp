#include "bmv/mc_validate.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <vector>

#include "bmv/blockmax.hpp"
#include "bmv/error.hpp"
#include "bmv/kernels.hpp"

namespace bmv::mc {

McReport validate(const Vine3Spec& spec, std::int64_t n, std::int64_t blocks,
                  std::uint64_t seed, const QuadratureConfig& q) {
  if (blocks < kMinBlocks)
    throw DomainError("mc validation needs at least " + std::to_string(kMinBlocks) + " blocks");
  if (n < 1 || n > INT_MAX) throw DomainError("block size n out of range");

  std::vector<Point3> maxima(static_cast<std::size_t>(blocks));
  kernels::omp::block_maxima(spec, static_cast<int>(n), seed, maxima);

  std::vector<Point3> grid;
  for (int i = 1; i <= kGridPoints; ++i)
    for (int j = 1; j <= kGridPoints; ++j)
      for (int k = 1; k <= kGridPoints; ++k)
        grid.push_back({i / (kGridPoints + 1.0), j / (kGridPoints + 1.0), k / (kGridPoints + 1.0)});
  std::vector<double> empirical(grid.size()), model(grid.size());
  kernels::omp::empirical_cdf(maxima, grid, empirical);
  const BlockMaxModel m = BlockMaxModel::from_vine(spec, n, q);
  kernels::omp::evaluate([&m](const Point3& u) { return blockmax::max_copula_cdf(m, u); }, grid,
                         model);

  double sup = 0.0, sq = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double diff = empirical[g] - model[g];
    sup = std::max(sup, std::abs(diff));
    sq += diff * diff;
  }
  const double threshold = 3.0 / std::sqrt(static_cast<double>(blocks));
  return {n,   blocks, seed, sup, static_cast<double>(blocks) * sq / static_cast<double>(grid.size()),
          threshold, sup <= threshold};
}

}  // namespace bmv::mc
