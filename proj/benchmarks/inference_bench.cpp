#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "srbench/ensemble.hpp"
#include "srbench/tiling.hpp"

namespace srbench {
namespace {

void BM_SelfEnsembleNearest(benchmark::State& state) {
  const Image img = bench::noise_image(128, 128, 7);
  const Model nn = nearest_neighbor_model(2);
  const auto subset = transform_subset(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(self_ensemble(img, nn, subset));
}
BENCHMARK(BM_SelfEnsembleNearest)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PlanTiles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plan_tiles(2040, 1356, 80, 60, 4));
}
BENCHMARK(BM_PlanTiles);

void BM_TiledApplyNearest(benchmark::State& state) {
  const Image img = bench::noise_image(380, 380, 8);
  const Model nn = nearest_neighbor_model(2);
  for (auto _ : state) benchmark::DoNotOptimize(tiled_apply(img, nn, 80, 60));
}
BENCHMARK(BM_TiledApplyNearest)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace srbench
