#include <benchmark/benchmark.h>

#include "nsdecay/chain_verifier.hpp"
#include "nsdecay/decay_constants.hpp"
#include "nsdecay/heat_oracle.hpp"
#include "nsdecay/initial_data.hpp"
#include "nsdecay/solver.hpp"
#include "nsdecay/transform.hpp"

using namespace nsdecay;

namespace {

GridSpec box(int n, int N) {
  GridSpec g;
  g.dimension = n;
  g.resolution = N;
  g.viscosity = 0.05;
  return g;
}

SpectralField seeded_field(int n, int N) {
  RandomFieldSpec spec;
  spec.seed = 3;
  return random_solenoidal(box(n, N), spec);
}

}  // namespace

static void BM_RoundTrip2D(benchmark::State& state) {
  const SpectralField u = seeded_field(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(inverse_transform(u)));
}
BENCHMARK(BM_RoundTrip2D)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_RoundTrip3D(benchmark::State& state) {
  const SpectralField u = seeded_field(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(inverse_transform(u)));
}
BENCHMARK(BM_RoundTrip3D)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_NonlinearTerm(benchmark::State& state) {
  const SpectralField u = seeded_field(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u));
}
BENCHMARK(BM_NonlinearTerm)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_Step(benchmark::State& state) {
  const StateSnapshot s{0.0, seeded_field(2, static_cast<int>(state.range(0)))};
  SolverConfig cfg;
  cfg.dt = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(step(s, cfg));
}
BENCHMARK(BM_Step)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_KConstant(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double alpha = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_constant({alpha, m}));
    alpha = alpha < 4.0 ? alpha + 0.01 : 0.5;
  }
}
BENCHMARK(BM_KConstant)->Arg(1)->Arg(4)->Arg(16);

static void BM_LimitQuadrature(benchmark::State& state) {
  RadialProfile p;
  p.kappa = 1.0;
  p.dimension = 3;
  for (auto _ : state) benchmark::DoNotOptimize(asymptotic_limit_quadrature(p, 1.0, 2));
}
BENCHMARK(BM_LimitQuadrature);

static void BM_CheckChainHeat(benchmark::State& state) {
  RadialProfile p;
  p.kappa = 1.0;
  p.dimension = 2;
  const NormSeries s = heat_series(p, 1.0, heat_sample_times(1e3), 4);
  ChainCheckConfig cfg;
  cfg.alpha = 1.0;
  cfg.t0 = 10.0;
  cfg.k_max = 3;
  cfg.window = {200.0, 1e3};
  for (auto _ : state) benchmark::DoNotOptimize(check_chain(s, 1.0, cfg));
}
BENCHMARK(BM_CheckChainHeat)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
