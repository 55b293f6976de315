#include <benchmark/benchmark.h>

#include "grasscurve/family.hpp"
#include "grasscurve/solver.hpp"
#include "grasscurve/veronese.hpp"

using namespace grasscurve;

static void BM_FamilyExactChecks(benchmark::State& state) {
  const FamilyParam p(make_rat(5, 2));
  for (auto _ : state) {
    const auto curve = family_curve(p);
    const auto inv = invariant_chain(curve);
    const auto cc = check_constraints(assemble_constraints(curve, inv.c, inv.d));
    benchmark::DoNotOptimize(cc);
  }
}
BENCHMARK(BM_FamilyExactChecks)->Unit(benchmark::kMicrosecond);

static void BM_VaryingSecondFormProfile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(jiao_detA1_check());
}
BENCHMARK(BM_VaryingSecondFormProfile)->Unit(benchmark::kMicrosecond);

static void BM_OsculatingWedge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(osculating(n, n / 2));
}
BENCHMARK(BM_OsculatingWedge)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_Gradient(benchmark::State& state) {
  Problem p;
  const auto curve = initial_point(p, 0);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(curve, p));
}
BENCHMARK(BM_Gradient)->Unit(benchmark::kMicrosecond);

static void BM_Descent(benchmark::State& state) {
  Problem p;
  p.c = 3.0;
  int k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(descend(initial_point(p, k++), p));
}
BENCHMARK(BM_Descent)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  Problem p;
  p.restarts = 16;
  p.seed = 7;
  p.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_Solve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
