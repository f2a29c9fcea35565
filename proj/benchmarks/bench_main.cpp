#include <benchmark/benchmark.h>

#include "minbis/firstmoment.hpp"
#include "minbis/graph.hpp"
#include "minbis/improve.hpp"
#include "minbis/oracle.hpp"
#include "minbis/orthant.hpp"
#include "minbis/pipeline.hpp"
#include "minbis/wavecut.hpp"

namespace {

using namespace minbis;

void BM_SampleCubicGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_cubic_graph(n, seed++));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleCubicGraph)->Arg(1000)->Arg(20000)->Arg(200000);

void BM_WaveField(benchmark::State& state) {
  const auto g = sample_cubic_graph(20000, 1);
  WaveParams p;
  p.radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wave_field(g, p));
    ++p.seed;
  }
}
BENCHMARK(BM_WaveField)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_WaveBisect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_cubic_graph(n, 2);
  WaveParams p;
  p.radius = default_radius(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wave_bisect(g, p));
    ++p.seed;
  }
}
BENCHMARK(BM_WaveBisect)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_LocalSearchFromRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_cubic_graph(n, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const auto start = random_bisection(g, seed++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(local_search(g, start));
  }
}
BENCHMARK(BM_LocalSearchFromRandom)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_OrthantMC(benchmark::State& state) {
  MCOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  constexpr long long samples = 1 << 20;
  for (auto _ : state) benchmark::DoNotOptimize(orthant_mc(samples, seed++, opt));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_OrthantMC)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ExactBisection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_cubic_graph(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(exact_bisection(g));
}
BENCHMARK(BM_ExactBisection)->DenseRange(12, 24, 4)->Unit(benchmark::kMillisecond);

void BM_Type2Optimize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(type2_optimize(0.1, 0.103295));
}
BENCHMARK(BM_Type2Optimize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
