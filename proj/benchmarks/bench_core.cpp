#include <speig/eigensolver.hpp>
#include <speig/linalg.hpp>
#include <speig/manifold.hpp>
#include <speig/optimizer.hpp>
#include <speig/problems.hpp>
#include <speig/williamson.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace speig;

namespace {

void BM_WilliamsonGeneral(benchmark::State& state) {
  const Index dim = state.range(0);
  std::mt19937_64 rng(1);
  const SpdMatrix m = random_spd(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(williamson_general(m));
  }
}
BENCHMARK(BM_WilliamsonGeneral)
    ->Arg(20)
    ->Arg(60)
    ->Arg(100)
    ->Arg(200)
    ->Unit(benchmark::kMillisecond);

void BM_SkewSchur(benchmark::State& state) {
  const Index dim = state.range(0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = dist(rng);
  }
  const SkewSymmetricMatrix a(((g - g.transpose()) / 2).eval());
  for (auto _ : state) {
    benchmark::DoNotOptimize(skew_schur(a));
  }
}
BENCHMARK(BM_SkewSchur)->Arg(20)->Arg(60)->Arg(200)->Unit(
    benchmark::kMillisecond);

void BM_RiemannianGradient(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937_64 rng(3);
  const SpdMatrix m = random_spd(2 * n, rng);
  const SymplecticFrame x = random_symplectic_frame(n, 5, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riemannian_gradient(m, x, 1.0));
  }
}
BENCHMARK(BM_RiemannianGradient)->Arg(50)->Arg(100)->Arg(250);

void BM_CayleyRetractDense(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937_64 rng(4);
  const SpdMatrix m = random_spd(2 * n, rng);
  const SymplecticFrame x = random_symplectic_frame(n, 5, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cayley_retract(x, gf, 1e-3, CayleySolve::Dense));
  }
}
BENCHMARK(BM_CayleyRetractDense)->Arg(50)->Arg(100)->Arg(250);

void BM_CayleyRetractLowRank(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937_64 rng(4);
  const SpdMatrix m = random_spd(2 * n, rng);
  const SymplecticFrame x = random_symplectic_frame(n, 5, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cayley_retract(x, gf, 1e-3, CayleySolve::LowRank));
  }
}
BENCHMARK(BM_CayleyRetractLowRank)->Arg(50)->Arg(100)->Arg(250);

void BM_EigsSmallest(benchmark::State& state) {
  const Index n = state.range(0);
  const KnownSpectrumProblem prob = known_spectrum_matrix(n, 1);
  OptimizerConfig cfg;
  cfg.epsilon_rel = 0.0;
  cfg.epsilon_abs = 3e-7;
  cfg.max_iter = 120000;
  cfg.keep_trace = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(symplectic_eigs_smallest(prob.m, 3, cfg));
  }
}
BENCHMARK(BM_EigsSmallest)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
