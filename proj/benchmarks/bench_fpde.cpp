#include <benchmark/benchmark.h>

#include "mlfc/fpde.hpp"

using namespace mlfc;

static void bm_kg_snapshot(benchmark::State& state) {
  KGProblem p;
  p.x_grid.n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kg_solve(p, 10.0));
}

static void bm_schrodinger_snapshot(benchmark::State& state) {
  SchrodingerProblem p;
  p.x_grid.n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(schrodinger_solve(p, 10.0));
}

BENCHMARK(bm_kg_snapshot)->Arg(41)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_schrodinger_snapshot)->Arg(41)->Arg(401)->Unit(benchmark::kMillisecond);
