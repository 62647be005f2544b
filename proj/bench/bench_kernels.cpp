#include <benchmark/benchmark.h>

#include <vector>

#include "bmv/blockmax.hpp"
#include "bmv/kernels.hpp"
#include "bmv/presets.hpp"

namespace {

using namespace bmv;

std::vector<Point3> unit_grid(int per_axis) {
  std::vector<Point3> g;
  for (int i = 1; i <= per_axis; ++i)
    for (int j = 1; j <= per_axis; ++j)
      for (int k = 1; k <= per_axis; ++k)
        g.push_back({i / (per_axis + 1.0), j / (per_axis + 1.0), k / (per_axis + 1.0)});
  return g;
}

template <bool Parallel>
void sample_vine(benchmark::State& state) {
  const auto v = presets::clayton_vine();
  std::vector<Point3> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::sample_vine(v, 1, out);
    } else {
      kernels::serial::sample_vine(v, 1, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void block_maxima(benchmark::State& state) {
  const auto v = presets::gaussian_vine();
  std::vector<Point3> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::block_maxima(v, 10, 1, out);
    } else {
      kernels::serial::block_maxima(v, 10, 1, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

template <bool Parallel>
void maxima_density_grid(benchmark::State& state) {
  const auto model = BlockMaxModel::from_vine(presets::clayton_vine(), 50);
  const auto grid = unit_grid(static_cast<int>(state.range(0)));
  std::vector<double> out(grid.size());
  const kernels::PointFunction f = [&](const Point3& u) {
    return blockmax::max_copula_pdf(model, u);
  };
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::evaluate(f, grid, out);
    } else {
      kernels::serial::evaluate(f, grid, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.size()));
}

template <bool Parallel>
void empirical_cdf(benchmark::State& state) {
  std::vector<Point3> data(static_cast<std::size_t>(state.range(0)));
  kernels::omp::sample_vine(presets::gaussian_vine(), 2, data);
  const auto grid = unit_grid(9);
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::empirical_cdf(data, grid, out);
    } else {
      kernels::serial::empirical_cdf(data, grid, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          static_cast<long long>(grid.size()));
}

}  // namespace

BENCHMARK(sample_vine<false>)->Name("sample_vine/serial")->Arg(100000);
BENCHMARK(sample_vine<true>)->Name("sample_vine/omp")->Arg(100000);
BENCHMARK(block_maxima<false>)->Name("block_maxima/serial")->Arg(20000);
BENCHMARK(block_maxima<true>)->Name("block_maxima/omp")->Arg(20000);
BENCHMARK(maxima_density_grid<false>)->Name("maxima_density_grid/serial")->Arg(6);
BENCHMARK(maxima_density_grid<true>)->Name("maxima_density_grid/omp")->Arg(6);
BENCHMARK(empirical_cdf<false>)->Name("empirical_cdf/serial")->Arg(100000);
BENCHMARK(empirical_cdf<true>)->Name("empirical_cdf/omp")->Arg(100000);

BENCHMARK_MAIN();
