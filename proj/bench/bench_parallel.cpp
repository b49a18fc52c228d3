// Serial reference paths against their OpenMP counterparts.

#include <vector>

#include <benchmark/benchmark.h>

#include "disco/bounds.hpp"
#include "disco/disco.hpp"
#include "disco/limit_moments.hpp"
#include "disco/spectra.hpp"

namespace {

void BM_ExactMomentSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(disco::exact_moment_serial(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExactMomentSerial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ExactMomentParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(disco::exact_moment(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExactMomentParallel)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

const disco::MomentSource& d1_source() {
  static const disco::MomentSource s = disco::make_disco_plan(disco::Pst{}, disco::RealSymmetric{}, 1, 128,
                                                              disco::EntryDistribution::StandardNormal);
  return s;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const std::vector<int> orders{2, 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(disco::monte_carlo_moments_serial(d1_source(), orders, state.range(0), 1));
  }
}
BENCHMARK(BM_MonteCarloSerial)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MonteCarloParallel(benchmark::State& state) {
  const std::vector<int> orders{2, 4};
  for (auto _ : state) benchmark::DoNotOptimize(disco::monte_carlo_moments(d1_source(), orders, state.range(0), 1));
}
BENCHMARK(BM_MonteCarloParallel)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HolderSweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(disco::holder_sweep_serial(state.range(0), 6, 1));
}
BENCHMARK(BM_HolderSweepSerial)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HolderSweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(disco::holder_sweep(state.range(0), 6, 1));
}
BENCHMARK(BM_HolderSweepParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
