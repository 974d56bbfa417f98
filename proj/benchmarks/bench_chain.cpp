#include <benchmark/benchmark.h>

#include <gibbs/exact_oracle.hpp>
#include <gibbs/measures.hpp>
#include <gibbs/rng.hpp>

namespace {

void BM_ReferenceSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gibbs::Rng rng(0x5eed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gibbs::sample_reference(n, 1.0, rng));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ReferenceSample)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_McmcStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gibbs::ModelParams params{n, 1.0, 0.5, gibbs::PNorm::finite(2.0)};
  gibbs::ChainState chain(params, 0x5eed);
  for (auto _ : state) {
    gibbs::mcmc_step(chain);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_McmcStep)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_McmcStepPenalized(benchmark::State& state) {
  // Negative b rewards long distances, so most additions early-reject.
  const int n = static_cast<int>(state.range(0));
  gibbs::ModelParams params{n, 2.0, -1.0, gibbs::PNorm::infinity()};
  gibbs::ChainState chain(params, 0x5eed);
  for (auto _ : state) {
    gibbs::mcmc_step(chain);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_McmcStepPenalized)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gibbs::ModelParams params{n, 1.0, 0.5, gibbs::PNorm::finite(2.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gibbs::enumerate_gibbs(params));
  }
}
BENCHMARK(BM_Enumerate)->DenseRange(4, 7);

}  // namespace

BENCHMARK_MAIN();
