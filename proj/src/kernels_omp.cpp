#include <exception>
#include <mutex>

#include "bmv/kernels.hpp"
#include "kernel_chunks.hpp"

namespace bmv::kernels::omp {

namespace {

// Exceptions must not cross the parallel region; keep the first one.
class FirstError {
 public:
  template <typename Fn>
  void run(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace

void sample_vine(const Vine3Spec& v, std::uint64_t seed, std::span<Point3> out) {
  const auto chunks = static_cast<long long>(detail::chunk_count(out.size()));
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < chunks; ++c) {
    err.run([&] { detail::sample_chunk(v, seed, c, detail::chunk_of(out, c)); });
  }
  err.rethrow();
}

void block_maxima(const Vine3Spec& v, int n, std::uint64_t seed, std::span<Point3> out) {
  const auto chunks = static_cast<long long>(detail::chunk_count(out.size()));
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < chunks; ++c) {
    err.run([&] { detail::block_chunk(v, n, seed, c, detail::chunk_of(out, c)); });
  }
  err.rethrow();
}

void evaluate(const PointFunction& f, std::span<const Point3> points, std::span<double> out) {
  const auto n = static_cast<long long>(points.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    err.run([&] { out[i] = f(points[i]); });
  }
  err.rethrow();
}

void empirical_cdf(std::span<const Point3> data, std::span<const Point3> grid,
                   std::span<double> out) {
  const auto n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long g = 0; g < n; ++g) out[g] = detail::ecdf_at(data, grid[g]);
}

}  // namespace bmv::kernels::omp
