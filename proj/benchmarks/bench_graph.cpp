#include <benchmark/benchmark.h>

#include <gibbs/measures.hpp>
#include <gibbs/rng.hpp>
#include <gibbs/segment_graph.hpp>

namespace {

gibbs::SegmentGraph make_graph(int n, double gamma, std::uint64_t seed) {
  gibbs::Rng rng(seed);
  return gibbs::sample_reference(n, gamma, rng);
}

void BM_HpFinite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const gibbs::SegmentGraph g = make_graph(n, 1.0, 0x5eed);
  gibbs::HpEvaluator eval(n);
  const gibbs::PNorm p = gibbs::PNorm::finite(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(g, p));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_HpFinite)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_HpDiameter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const gibbs::SegmentGraph g = make_graph(n, 1.0, 0x5eed);
  gibbs::HpEvaluator eval(n);
  const gibbs::PNorm p = gibbs::PNorm::infinity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(g, p));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_HpDiameter)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_AllPairsDistances(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const gibbs::SegmentGraph g = make_graph(n, 1.0, 0x5eed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gibbs::all_pairs_distances(g));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_AllPairsDistances)->RangeMultiplier(2)->Range(64, 512)->Complexity();

}  // namespace

BENCHMARK_MAIN();
