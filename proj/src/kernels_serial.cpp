#include "bmv/kernels.hpp"
#include "kernel_chunks.hpp"

namespace bmv::kernels {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace serial {

void sample_vine(const Vine3Spec& v, std::uint64_t seed, std::span<Point3> out) {
  for (std::size_t c = 0; c < detail::chunk_count(out.size()); ++c) {
    detail::sample_chunk(v, seed, c, detail::chunk_of(out, c));
  }
}

void block_maxima(const Vine3Spec& v, int n, std::uint64_t seed, std::span<Point3> out) {
  for (std::size_t c = 0; c < detail::chunk_count(out.size()); ++c) {
    detail::block_chunk(v, n, seed, c, detail::chunk_of(out, c));
  }
}

void evaluate(const PointFunction& f, std::span<const Point3> points, std::span<double> out) {
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
}

void empirical_cdf(std::span<const Point3> data, std::span<const Point3> grid,
                   std::span<double> out) {
  for (std::size_t g = 0; g < grid.size(); ++g) out[g] = detail::ecdf_at(data, grid[g]);
}

}  // namespace serial
}  // namespace bmv::kernels
