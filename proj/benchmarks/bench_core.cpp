#include <benchmark/benchmark.h>

#include <vector>

#include "pointnls/abel.hpp"
#include "pointnls/charge_solver.hpp"
#include "pointnls/faddeeva.hpp"
#include "pointnls/frac_sobolev.hpp"
#include "pointnls/reconstruction.hpp"
#include "pointnls/schrodinger_kernel.hpp"

using namespace pointnls;

static void BM_Faddeeva(benchmark::State& state) {
  cplx z(0.3, -2.0), acc = 0.0;
  for (auto _ : state) {
    acc += faddeeva(z);
    z += cplx(1e-6, 1e-6);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_Faddeeva);

static void BM_AbelHistory(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AbelWeights w(1e-3, n);
  std::vector<cplx> f(n + 1, cplx(1.0, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(w.history(f, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AbelHistory)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_SolveChargeGaussian(benchmark::State& state) {
  const auto d = InitialDatum::gaussian({0.5, 1.0, 0.0, 0.0});
  SolverConfig cfg;
  cfg.dt = 1.0 / static_cast<double>(state.range(0));
  cfg.T = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_charge(d, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveChargeGaussian)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_ChirpWeights(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ChirpWeights(0.5, 1e-2, n));
}
BENCHMARK(BM_ChirpWeights)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

static void BM_Reconstruct(benchmark::State& state) {
  const auto d = InitialDatum::gaussian({0.5, 1.0, 0.0, 0.0});
  SolverConfig cfg;
  cfg.dt = 1e-2;
  cfg.T = 5.0;
  const auto traj = solve_charge(d, cfg);
  const SpatialGrid g(10.0, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(traj, d, 5.0, g));
}
BENCHMARK(BM_Reconstruct)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_FracNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TimeGrid grid(0.0, 1e-3, n);
  std::vector<cplx> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = cplx(1.0 / (1.0 + grid.node(k)), 0.0);
  FracNormSpec spec;
  spec.mu = 0.25;
  for (auto _ : state) benchmark::DoNotOptimize(frac_sobolev_norm(v, grid, spec));
}
BENCHMARK(BM_FracNorm)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
