#include <benchmark/benchmark.h>

#include <numbers>

#include "frachjb/fracops.hpp"
#include "frachjb/hamiltonian.hpp"
#include "frachjb/initial_data.hpp"
#include "frachjb/oracles.hpp"
#include "frachjb/solver.hpp"

using namespace frachjb;

namespace {

PeriodicGrid line(benchmark::State& state) {
  return PeriodicGrid(1, static_cast<std::size_t>(state.range(0)), 2.0 * std::numbers::pi);
}

void BM_Spectral(benchmark::State& state) {
  GridField u = initial_datum(line(state), "exp_sin");
  for (auto _ : state) benchmark::DoNotOptimize(apply_spectral(u, FractionalOrder(1.0)));
}
BENCHMARK(BM_Spectral)->RangeMultiplier(4)->Range(256, 4096);

void BM_Quadrature(benchmark::State& state) {
  PeriodicGrid g = line(state);
  GridField u = initial_datum(g, "exp_sin");
  FractionalOperator op(g, FractionalOrder(1.0), OperatorBackend::quadrature());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(u));
}
BENCHMARK(BM_Quadrature)->RangeMultiplier(4)->Range(256, 4096);

void BM_Step(benchmark::State& state) {
  PeriodicGrid g = line(state);
  GridField u = initial_datum(g, "triangle");
  HamiltonianSpec spec = make_catalog_hamiltonian("eikonal");
  SolverConfig cfg;
  cfg.epsilon = 0.5;
  cfg.backend = OperatorBackend::quadrature();
  const double dt = stable_dt(cfg, g, spec, lipschitz_constant(u));
  for (auto _ : state) benchmark::DoNotOptimize(step(u, 0.0, dt, spec, cfg));
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(256, 4096);

void BM_HopfLax(benchmark::State& state) {
  GridField u = initial_datum(line(state), "triangle");
  HamiltonianSpec spec = make_catalog_hamiltonian("quadratic");
  for (auto _ : state) benchmark::DoNotOptimize(hopf_lax(u, spec, 0.25));
}
BENCHMARK(BM_HopfLax)->RangeMultiplier(4)->Range(256, 1024);

}  // namespace
BENCHMARK_MAIN();
