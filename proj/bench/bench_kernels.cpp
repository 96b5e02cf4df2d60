// Serial reference vs OpenMP kernels on a hardcore sigma = 1 state.

#include <benchmark/benchmark.h>

#include "twobody/kernels.hpp"
#include "twobody/wavefield.hpp"

using namespace twobody;

namespace {

struct Fixture {
  SystemParams params{Strength::hardcore(), 1.0};
  NumericsConfig cfg = NumericsConfig::defaults(1.0);
  RadialSolution sol;
  PairWavefunctionGrid grid;

  Fixture() {
    sol = solve_ground_state(params, cfg);
    grid = assemble(params, cfg, sol);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_FillSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::serial::fill_grid(f.grid.evaluator(), f.grid.radial_rule, f.cfg.n_angular));
}

void BM_FillOmp(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::omp::fill_grid(f.grid.evaluator(), f.grid.radial_rule, f.cfg.n_angular));
}

void BM_ProjectSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::project_channels(
        f.grid.evaluator(), f.grid.radial_rule, f.grid.cusp(), f.cfg.l_max));
}

void BM_ProjectOmp(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::project_channels(
        f.grid.evaluator(), f.grid.radial_rule, f.grid.cusp(), f.cfg.l_max));
}

}  // namespace

BENCHMARK(BM_FillSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FillOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectOmp)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
