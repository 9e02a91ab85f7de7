#include <benchmark/benchmark.h>

#include "ccnr/experiments.hpp"

using namespace ccnr;

static void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const ComplexMatrix a = ginibre(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
}
BENCHMARK(BM_Svd)->Arg(4)->Arg(9)->Arg(16)->Arg(36)->Arg(81);

static void BM_HermitianEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const ComplexMatrix g = ginibre(n, n, rng);
  const ComplexMatrix h = 0.5 * (g + g.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(9)->Arg(16)->Arg(36)->Arg(81);

static void BM_RealignmentTest(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const BipartiteState s = random_mixed(d, d, d * d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(realignment_test(s));
}
BENCHMARK(BM_RealignmentTest)->Arg(2)->Arg(3)->Arg(4)->Arg(9);

static void BM_TilesUpb(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(realignment_test(tiles_upb()));
}
BENCHMARK(BM_TilesUpb);

static void BM_HorodeckiSweepRow(benchmark::State& state) {
  const Grid a{0.236, 0.236, 1.0};
  const Grid p{0.0, 1.0, 1.0 / 199.0};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_horodecki_mix(a, p));
}
BENCHMARK(BM_HorodeckiSweepRow)->Unit(benchmark::kMillisecond);

static void BM_RandomSearch(benchmark::State& state) {
  SearchOptions opts;
  opts.count = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(random_search(opts));
}
BENCHMARK(BM_RandomSearch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
