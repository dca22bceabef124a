#include <benchmark/benchmark.h>

#include "mlfc/oscint.hpp"

using namespace mlfc;

namespace {

OscIntegralSpec quadratic_spec(double lambda) {
  OscIntegralSpec s;
  s.params = {0.8, 0.8};
  s.lambda = lambda;
  s.phase = Phase::quadratic(0);
  s.amplitude = Amplitude::indicator(0, 1);
  return s;
}

void bm_adaptive(benchmark::State& state) {
  OscIntegralSpec s = quadratic_spec(static_cast<double>(state.range(0)));
  long evals = 0;
  for (auto _ : state) evals = compute_integral(s).n_evals;
  state.counters["n_evals"] = static_cast<double>(evals);
}

void bm_brute_force(benchmark::State& state) {
  OscIntegralSpec s = quadratic_spec(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_integral_oracle(s));
}

}  // namespace

BENCHMARK(bm_adaptive)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_brute_force)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
