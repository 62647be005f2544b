#pragma once

// Per-chunk bodies shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cmath>
#include <random>
#include <span>

#include "bmv/kernels.hpp"

namespace bmv::kernels::detail {

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

inline std::span<Point3> chunk_of(std::span<Point3> out, std::size_t c) {
  const std::size_t begin = c * kChunk;
  return out.subspan(begin, std::min(kChunk, out.size() - begin));
}

inline void sample_chunk(const Vine3Spec& v, std::uint64_t seed, std::size_t c,
                         std::span<Point3> dst) {
  std::mt19937_64 gen(stream_seed(seed, c));
  for (auto& p : dst) {
    Point3 w;
    for (auto& x : w) x = uniform01(gen);
    p = vine3::transform_uniforms(v, w);
  }
}

inline void block_chunk(const Vine3Spec& v, int n, std::uint64_t seed, std::size_t c,
                        std::span<Point3> dst) {
  std::mt19937_64 gen(stream_seed(seed, c));
  for (auto& p : dst) {
    Point3 mx{0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      Point3 w;
      for (auto& x : w) x = uniform01(gen);
      const Point3 u = vine3::transform_uniforms(v, w);
      for (int j = 0; j < 3; ++j) mx[j] = std::max(mx[j], u[j]);
    }
    for (int j = 0; j < 3; ++j) p[j] = std::pow(mx[j], n);
  }
}

inline double ecdf_at(std::span<const Point3> data, const Point3& g) {
  std::size_t hits = 0;
  for (const auto& x : data) {
    hits += (x[0] <= g[0]) & (x[1] <= g[1]) & (x[2] <= g[2]);
  }
  return data.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace bmv::kernels::detail
