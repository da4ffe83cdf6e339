#include <vector>

#include <benchmark/benchmark.h>

#include "unruh/collective.hpp"
#include "unruh/lindblad.hpp"

using namespace unruh;

namespace {

std::vector<double> grid(double t1, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t1 * i / (n - 1);
  return g;
}

}  // namespace

static void BM_ProfileGeneral(benchmark::State& state) {
  const auto g = grid(1.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(collective::profile_general(1.0, 0.95, 20, 3.0, g));
}
BENCHMARK(BM_ProfileGeneral);

static void BM_SolveWOde(benchmark::State& state) {
  const auto g = grid(1.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(collective::solve_W_ode(1.0, 0.0, 0.95, 20, 3.0, g));
}
BENCHMARK(BM_SolveWOde)->Unit(benchmark::kMillisecond);

static void BM_TotalQuanta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(collective::total_quanta(1.0, 0.0, 0.95, 20, 3.0));
}
BENCHMARK(BM_TotalQuanta)->Unit(benchmark::kMillisecond);

static void BM_LindbladDicke(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rm = lindblad::dicke_matrix(n, 1.0);
  const auto g = grid(2.0, 201);
  for (auto _ : state) benchmark::DoNotOptimize(lindblad::evolve(rm, 3.14159, 0.0, g, {.keep_states = false}));
}
BENCHMARK(BM_LindbladDicke)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
