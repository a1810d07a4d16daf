// Parallel kernels against their serial execution and the reference sweeps.

#include <benchmark/benchmark.h>

#include "hyperperc/config.hpp"
#include "hyperperc/densities.hpp"
#include "hyperperc/sweep.hpp"

using namespace hyperperc;

namespace {

const std::vector<double> kGrid = parse_grid("0.05:0.95:0.01");

Execution execution_of(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_GraphSweep(benchmark::State& state) {
  GraphModel model;
  model.layers = 6;
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_graph(model, {3, 4, 5}, kGrid, 64, 1, execution_of(state)));
}
BENCHMARK(BM_GraphSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GraphSweepReference(benchmark::State& state) {
  GraphModel model;
  model.layers = 6;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_graph_reference(model, {3, 4, 5}, kGrid, 64, 1));
}
BENCHMARK(BM_GraphSweepReference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_VoronoiSweep(benchmark::State& state) {
  const VoronoiModel model;
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_voronoi(model, {4, 5, 6}, kGrid, 16, 1, execution_of(state)));
}
BENCHMARK(BM_VoronoiSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_VoronoiSweepReference(benchmark::State& state) {
  const VoronoiModel model;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_voronoi_reference(model, {4, 5, 6}, kGrid, 16, 1));
}
BENCHMARK(BM_VoronoiSweepReference)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Densities(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_densities(1.0, Window{7.0, 5.0}, 8, 1, execution_of(state)));
}
BENCHMARK(BM_Densities)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Decay(benchmark::State& state) {
  const GraphModel model;
  for (auto _ : state) benchmark::DoNotOptimize(decay_profile(model, 0.15, 8, 500, 1, execution_of(state)));
}
BENCHMARK(BM_Decay)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
