#include <benchmark/benchmark.h>

#include "wehrl/kernels.hpp"
#include "wehrl/sampling.hpp"

using namespace wehrl;

namespace {

HusimiFactors factors(int twice_l) {
  Rng rng(7);
  return HusimiFactors::from(haar_state(SpinLabel(twice_l), rng));
}

void BM_EntropySerial(benchmark::State& state) {
  const HusimiFactors f = factors(static_cast<int>(state.range(0)));
  const SphereGrid grid = SphereGrid::build({static_cast<int>(state.range(1)), 2 * static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(sphere_average_serial(f, grid, Integrand::entropy()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_EntropyParallel(benchmark::State& state) {
  const HusimiFactors f = factors(static_cast<int>(state.range(0)));
  const SphereGrid grid = SphereGrid::build({static_cast<int>(state.range(1)), 2 * static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(sphere_average(f, grid, Integrand::entropy()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_HusimiGridSerial(benchmark::State& state) {
  const HusimiFactors f = factors(static_cast<int>(state.range(0)));
  const SphereGrid grid = SphereGrid::build({static_cast<int>(state.range(1)), 2 * static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(husimi_on_grid_serial(f, grid));
}

void BM_HusimiGridParallel(benchmark::State& state) {
  const HusimiFactors f = factors(static_cast<int>(state.range(0)));
  const SphereGrid grid = SphereGrid::build({static_cast<int>(state.range(1)), 2 * static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(husimi_on_grid(f, grid));
}

void grid_args(benchmark::internal::Benchmark* b) {
  for (int twice_l : {2, 8, 16})
    for (int n : {64, 256, 512}) b->Args({twice_l, n});
}

}  // namespace

BENCHMARK(BM_EntropySerial)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EntropyParallel)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HusimiGridSerial)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HusimiGridParallel)->Apply(grid_args)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
