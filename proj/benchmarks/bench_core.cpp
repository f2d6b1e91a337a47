#include <benchmark/benchmark.h>

#include <cmath>

#include "bwave/besselfn.hpp"
#include "bwave/geomfront.hpp"
#include "bwave/huygens.hpp"
#include "bwave/jacobi_eigen.hpp"
#include "bwave/locality_probe.hpp"
#include "bwave/specops.hpp"
#include "bwave/tools/verify.hpp"

using namespace bwave;

static void BM_Phi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double r = 0.0;
  for (auto _ : state) {
    r = std::fmod(r + 0.137, 40.0);
    benchmark::DoNotOptimize(phi(n, r));
  }
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(5)->Arg(10);

static void BM_Jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  tools::SplitMix64 rng(1);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a).values);
}
BENCHMARK(BM_Jacobi)->Arg(16)->Arg(64)->Arg(128);

static void BM_TorusBuild(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0)), m = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_torus_domain(q, m).dimension());
}
BENCHMARK(BM_TorusBuild)->Args({2, 8})->Args({2, 16})->Args({3, 4});

static void BM_DeformedD(benchmark::State& state) {
  const SpectralDomain d = build_torus_domain(2, static_cast<int>(state.range(0)));
  tools::SplitMix64 rng(2);
  const Cochain f = tools::random_smooth_cochain(d, 0, 2.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(deformed_d(d, 0.7, f).coefficients);
}
BENCHMARK(BM_DeformedD)->Arg(8)->Arg(16);

static void BM_Pizzetti(benchmark::State& state) {
  tools::SplitMix64 rng(3);
  const MultiPoly g = tools::random_polynomial(3, static_cast<int>(state.range(0)), 6, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pizzetti_ball(g));
    benchmark::DoNotOptimize(ball_average_exact(g));
  }
}
BENCHMARK(BM_Pizzetti)->Arg(4)->Arg(8);

static void BM_LocalityProbe(benchmark::State& state) {
  LocalityProbeConfig cfg;
  cfg.max_frequency = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(locality_probe(cfg).deformed_leakage);
}
BENCHMARK(BM_LocalityProbe)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_WavefrontLength(benchmark::State& state) {
  const SurfaceChart s = sphere_chart();
  for (auto _ : state) benchmark::DoNotOptimize(wavefront_length(s, Vec2(0.1, 0.2), 1.0, 64));
}
BENCHMARK(BM_WavefrontLength)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
