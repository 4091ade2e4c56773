#include <benchmark/benchmark.h>

#include <random>

#include "cdual/branch.hpp"
#include "cdual/certify.hpp"
#include "cdual/linalg.hpp"
#include "cdual/oracle.hpp"
#include "cdual/problems.hpp"
#include "cdual/stationary.hpp"

using namespace cdual;

static void BM_PolynomialHessian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = problems::random_polynomial(1, n, 4);
  const Vector x(n, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(p.hessian(x));
}
BENCHMARK(BM_PolynomialHessian)->DenseRange(1, 3);

static void BM_JacobiEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigenvalues(m));
}
BENCHMARK(BM_JacobiEigenvalues)->RangeMultiplier(2)->Range(2, 16);

static void BM_MultistartQuartic(benchmark::State& state) {
  const auto p = problems::quartic_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(multistart_solve(p));
}
BENCHMARK(BM_MultistartQuartic);

static void BM_MultistartRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = problems::random_polynomial(7, n, 4);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(multistart_solve(p));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_MultistartRandom)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_TraceBranch(benchmark::State& state) {
  const auto p = problems::quartic_counterexample();
  const StationaryPair seed{{1.0}, 44.0 / 5.0, 0.0};
  BranchTraceConfig cfg = BranchTraceConfig::around(seed.rho);
  cfg.step = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(trace_branch(p, seed, cfg));
}
BENCHMARK(BM_TraceBranch)->Unit(benchmark::kMillisecond);

static void BM_ConvexificationSampled(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = problems::random_polynomial(11, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(check_convexification(p, 5.0, BallSampling{}));
}
BENCHMARK(BM_ConvexificationSampled)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_GridOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = problems::random_polynomial(13, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(global_min_grid(p));
}
BENCHMARK(BM_GridOracle)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
