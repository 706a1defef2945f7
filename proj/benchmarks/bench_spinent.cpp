#include <benchmark/benchmark.h>

#include "spinent/closedform.hpp"
#include "spinent/oracle.hpp"
#include "spinent/sweep.hpp"

using namespace spinent;

namespace {

CoefficientSet draw(int two_s) {
  RandomStream rng(42);
  return sample_coefficients(SpinDims(two_s), 0.1, 0.1, bell_weights(), rng, SamplingOptions{});
}

void BM_ClosedForm(benchmark::State& state) {
  const auto set = draw(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(set));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosedForm)->RangeMultiplier(10)->Range(10, 1'000'000)->Complexity(benchmark::oN);

void BM_Sampling(benchmark::State& state) {
  const SpinDims dims(static_cast<int>(state.range(0)));
  RandomStream rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_coefficients(dims, 0.1, 0.1, bell_weights(), rng, SamplingOptions{}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sampling)->RangeMultiplier(10)->Range(10, 100'000)->Complexity(benchmark::oN);

void BM_Trial(benchmark::State& state) {
  SweepConfig config;
  config.oracle_crosscheck_max_dim = 0;
  const int two_s = static_cast<int>(state.range(0));
  int t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config, two_s, 2, ++t));
}
BENCHMARK(BM_Trial)->Arg(100)->Arg(100'000);

void BM_Oracle(benchmark::State& state) {
  const auto set = draw(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_evaluate(set));
}
BENCHMARK(BM_Oracle)->Arg(1)->Arg(3)->Arg(7)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
