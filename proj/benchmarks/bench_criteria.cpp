#include <numbers>

#include <benchmark/benchmark.h>

#include "spinpart/criteria.hpp"
#include "spinpart/momentmat.hpp"
#include "spinpart/states.hpp"
#include "spinpart/wernerscan.hpp"

using namespace spinpart;

static void BM_Class1Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto crit = DeterminantCriterion::class1(Bipartition::leading(n, n / 2));
  const auto rho = werner(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(crit.evaluate(rho));
}
BENCHMARK(BM_Class1Evaluate)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

static void BM_PptMinEigenvalue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = werner(n, 0.5);
  const auto part = Bipartition::leading(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ppt_min_eigenvalue(rho, part));
}
BENCHMARK(BM_PptMinEigenvalue)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_MomentMatrix(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto rho = density_from_pure(ghz(4, std::numbers::pi / 4));
  const Bipartition part(4, {1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(build_moment_matrix(rho, part, degree));
}
BENCHMARK(BM_MomentMatrix)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_WernerThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pmin_class1(n, 1, 1e-8));
}
BENCHMARK(BM_WernerThreshold)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
