#include <benchmark/benchmark.h>

#include "aidrely/analytic.hpp"
#include "aidrely/simulate.hpp"
#include "aidrely/sweep.hpp"

namespace {

using namespace aidrely;

Scenario base() {
  return make_scenario(AidProfile{Probability(0.7)}, UserProfile{Probability(0.6), Probability(0.4)},
                       policy::Discriminating{Probability(0.7), Probability(0.3)}, dependency::Joint{Probability(0.45)});
}

void BM_Evaluate(benchmark::State& state) {
  const auto s = base();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s));
}
BENCHMARK(BM_Evaluate);

void BM_EstimateAccuracy(benchmark::State& state) {
  const auto s = base();
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  const auto shards = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_accuracy(s, trials, 1, shards));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateAccuracy)->Args({100'000, 1})->Args({100'000, 4})->Args({1'000'000, 1})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_RunSweep(benchmark::State& state) {
  const SweepSpec spec{base(), "dependency.p_both_correct", 0.3, 0.6, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_RunSweep)->Arg(11)->Arg(101);

void BM_Sensitivity(benchmark::State& state) {
  const auto s = base();
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity(s));
}
BENCHMARK(BM_Sensitivity);

}  // namespace

BENCHMARK_MAIN();
