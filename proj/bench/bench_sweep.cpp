// Serial reference vs OpenMP sweep kernel, plus the per-replicate pipelines.

#include <benchmark/benchmark.h>

#include "femto/experiment.hpp"
#include "femto/shared_scheme.hpp"
#include "femto/topology.hpp"

using namespace femto;

namespace {

SweepSpec bench_spec(Strategy strategy) {
  SweepSpec spec;
  spec.n_f_values = {10, 20, 40};
  spec.gamma_values = {5};
  spec.epsilon_values = {0.0};
  spec.strategies = {strategy};
  spec.replicates = 64;
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<Strategy>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_records_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<Strategy>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_records(spec));
}

void BM_SharedPipeline(benchmark::State& state) {
  NetworkConfig config;
  config.n_f_mean = static_cast<double>(state.range(0));
  config.femtocell_count_mode = CountMode::fixed;
  const auto topo = sample_topology(config, ReplicateStream(config.seed, 0));
  const auto dist = build_distance_table(topo, config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_shared_pipeline(topo, dist, config, Strategy::sic));
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(static_cast<int>(Strategy::split))->Arg(static_cast<int>(Strategy::sic))
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(static_cast<int>(Strategy::split))->Arg(static_cast<int>(Strategy::sic))
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SharedPipeline)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
