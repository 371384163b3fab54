#include <benchmark/benchmark.h>

#include "aolab/criteria.hpp"
#include "aolab/generators.hpp"
#include "aolab/stability.hpp"

namespace {

using namespace aolab;

CMatrix planted(int dim) { return gen_planted_jordan(dim, 1.0, 20.0, 7).matrix; }

void BM_MinimalPolynomial(benchmark::State& state) {
  const auto a = planted(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_polynomial(a));
}
BENCHMARK(BM_MinimalPolynomial)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Decompose(benchmark::State& state) {
  const auto a = planted(static_cast<int>(state.range(0)));
  const auto p = minimal_polynomial(a);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a, p));
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_OrbitAnalyze(benchmark::State& state) {
  const auto a = planted(8);
  const auto d = decompose(a, minimal_polynomial(a));
  const auto h = CVector::basis(8, 0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbit_analyze(a, h, n_max, {}, &d));
}
BENCHMARK(BM_OrbitAnalyze)->Arg(2000)->Arg(20000);

void BM_TheoremCheck(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto eigs = spread_unimodular(dim, 0.2, 3);
  const auto a = gen_oblique(dim, eigs, 50.0, 5, true);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_check(a));
}
BENCHMARK(BM_TheoremCheck)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GrowthBound(benchmark::State& state) {
  const auto a = planted(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(growth_bound(a));
}
BENCHMARK(BM_GrowthBound)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
