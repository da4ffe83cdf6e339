#include <benchmark/benchmark.h>

#include "unruh/cavity.hpp"
#include "unruh/specfun.hpp"

using namespace unruh;

static void BM_ScaledK_Quadrature(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(specfun::besselK_im_scaled_quadrature(specfun::BesselOrder(nu), 0.8 * nu));
}
BENCHMARK(BM_ScaledK_Quadrature)->Arg(5)->Arg(20)->Arg(100)->Arg(400);

static void BM_ScaledK_Uniform(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::besselK_im_scaled_uniform(specfun::BesselOrder(nu), 0.8 * nu));
}
BENCHMARK(BM_ScaledK_Uniform)->Arg(100)->Arg(400)->Arg(1000000000);

static void BM_RindlerKernel(benchmark::State& state) {
  double w = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::rindler_kernel(w, 0.1));
    w = w > 2.0 ? 0.2 : w + 0.01;
  }
}
BENCHMARK(BM_RindlerKernel);

static void BM_ModeDensity(benchmark::State& state) {
  const auto spec = cavity::CavitySpec::from_detuning(1e-8, -1e-6);
  double k = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cavity::mode_density(k, spec));
    k += 1e-3;
  }
}
BENCHMARK(BM_ModeDensity);
