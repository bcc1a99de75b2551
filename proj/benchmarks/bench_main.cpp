#include <benchmark/benchmark.h>

#include "entcont/bounds.hpp"
#include "entcont/entanglement.hpp"
#include "entcont/metrics.hpp"
#include "entcont/states.hpp"

using namespace entcont;

static void BM_HermitianEig(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const DensityMatrix rho = sample_density(n, n, RngSeed{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(rho.matrix()));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64);

static void BM_Fidelity(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const DensityMatrix rho = sample_density(n, n, RngSeed{1, 0});
  const DensityMatrix sigma = sample_density(n, n, RngSeed{1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(rho, sigma));
}
BENCHMARK(BM_Fidelity)->Arg(4)->Arg(16)->Arg(64);

static void BM_CheckFannes(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const DensityMatrix rho = sample_density(n, n, RngSeed{2, 0});
  const DensityMatrix sigma = perturb(rho, 0.1, RngSeed{2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(check_fannes(rho, sigma));
}
BENCHMARK(BM_CheckFannes)->Arg(4)->Arg(16);

static void BM_EofMinimize(benchmark::State& state) {
  const BipartiteDims dims{2, 2};
  const BipartiteState rho(dims, sample_density(4, 4, RngSeed{3, 0}));
  OptimizerConfig config;
  config.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eof_minimize(rho, config));
}
BENCHMARK(BM_EofMinimize)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_EofTwoQubit(benchmark::State& state) {
  const BipartiteState rho({2, 2}, sample_density(4, 4, RngSeed{3, 0}));
  for (auto _ : state) benchmark::DoNotOptimize(eof_two_qubit(rho));
}
BENCHMARK(BM_EofTwoQubit);

BENCHMARK_MAIN();
