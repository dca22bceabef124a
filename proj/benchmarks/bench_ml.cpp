#include <benchmark/benchmark.h>

#include <numbers>

#include "mlfc/mittag_leffler.hpp"

using namespace mlfc;

namespace {

// Points on a ray at the given modulus so each benchmark exercises one route.
void bm_evaluate(benchmark::State& state, double alpha, double beta, double r) {
  MittagLeffler ml({alpha, beta}, 1e-12);
  const complex z = std::polar(r, 0.3 * std::numbers::pi);
  for (auto _ : state) benchmark::DoNotOptimize(ml(z));
}

void bm_oracle(benchmark::State& state) {
  const complex z = std::polar(20.0, 0.9 * std::numbers::pi);
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval_oracle({0.8, 0.8}, z, 50));
}

void bm_contour(benchmark::State& state) {
  const complex z{-4, 2};
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval_contour({1.3, 0.7}, z));
}

}  // namespace

BENCHMARK_CAPTURE(bm_evaluate, taylor, 0.8, 1.0, 2.0);
BENCHMARK_CAPTURE(bm_evaluate, asymptotic, 0.8, 1.0, 200.0);
BENCHMARK_CAPTURE(bm_evaluate, alpha2_taylor, 2.0, 2.0, 3.0);
BENCHMARK(bm_oracle);
BENCHMARK(bm_contour);
