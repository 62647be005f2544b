#pragma once

// Data-parallel kernels. Each kernel exists twice: a plain serial loop kept
// as the reference, and an OpenMP version that must produce bit-identical
// output for any thread count. Random streams are keyed by fixed-size
// chunks of the output index, never by thread.

#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "bmv/vine3.hpp"

namespace bmv::kernels {

inline constexpr std::size_t kChunk = 2048;

using PointFunction = std::function<double(const Point3&)>;

/// Seed of the random stream for one chunk (SplitMix64 finalizer).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

/// Uniform draw on the open interval (0,1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

namespace serial {

/// out[i] = i-th vine draw of the stream identified by seed.
void sample_vine(const Vine3Spec& v, std::uint64_t seed, std::span<Point3> out);

/// out[b] = (max_i U_i1^n, max_i U_i2^n, max_i U_i3^n) over the n draws of
/// block b, i.e. componentwise maxima mapped back to uniform margins.
void block_maxima(const Vine3Spec& v, int n, std::uint64_t seed, std::span<Point3> out);

void evaluate(const PointFunction& f, std::span<const Point3> points, std::span<double> out);

/// out[g] = fraction of data points componentwise <= grid[g].
void empirical_cdf(std::span<const Point3> data, std::span<const Point3> grid,
                   std::span<double> out);

}  // namespace serial

namespace omp {

void sample_vine(const Vine3Spec& v, std::uint64_t seed, std::span<Point3> out);
void block_maxima(const Vine3Spec& v, int n, std::uint64_t seed, std::span<Point3> out);
void evaluate(const PointFunction& f, std::span<const Point3> points, std::span<double> out);
void empirical_cdf(std::span<const Point3> data, std::span<const Point3> grid,
                   std::span<double> out);

}  // namespace omp
}  // namespace bmv::kernels
