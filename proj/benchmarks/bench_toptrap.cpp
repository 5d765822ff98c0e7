#include <benchmark/benchmark.h>

#include <numbers>

#include "toptrap/toptrap.hpp"

using namespace toptrap;

static void BM_ClosedFormSurvival(benchmark::State& state) {
  const DriveParams p(1.0, 1.5, 0.7);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(survival_probability(p, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_ClosedFormSurvival);

static void BM_InstantaneousBasis(benchmark::State& state) {
  const DriveParams p(1.0, 1.5, std::numbers::pi / 2);
  const auto grid = linear_grid(static_cast<double>(state.range(0)), 101);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_instantaneous_basis(p, grid));
}
BENCHMARK(BM_InstantaneousBasis)->Arg(10)->Arg(100);

static void BM_LabFrame(benchmark::State& state) {
  const DriveParams p(1.0, 1.5, std::numbers::pi / 2);
  const auto grid = linear_grid(static_cast<double>(state.range(0)), 101);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_lab_frame(p, grid));
}
BENCHMARK(BM_LabFrame)->Arg(10)->Arg(100);

static void BM_Fig1Sweep(benchmark::State& state) {
  SweepSpec s = figure_spec(Figure::kFig1);
  s.oracle = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s));
}
BENCHMARK(BM_Fig1Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
