#include <benchmark/benchmark.h>

#include "unruh/response.hpp"

using namespace unruh;

static void BM_GammaPair(benchmark::State& state) {
  const double alpha = state.range(0) == 0 ? 0.0 : 1e-9;
  const auto cav = cavity::CavitySpec::from_detuning(1e-8, -1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(response::gamma_pair(alpha, cav, 1.0));
}
BENCHMARK(BM_GammaPair)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_OmegaPair(benchmark::State& state) {
  const auto cav = cavity::CavitySpec::from_detuning(1e-5, -1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(response::omega_pair(1e-5, cav, 1.0));
}
BENCHMARK(BM_OmegaPair)->Unit(benchmark::kMillisecond);
