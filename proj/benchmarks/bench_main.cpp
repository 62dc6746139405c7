#include <benchmark/benchmark.h>

#include <cmath>

#include "hspline/bounds.hpp"
#include "hspline/geometry.hpp"
#include "hspline/interpolator.hpp"
#include "hspline/kernel.hpp"

using namespace hspline;

static void BM_BesselK(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  const double t = static_cast<double>(state.range(1)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(bessel_k(nu, t));
}
BENCHMARK(BM_BesselK)->ArgsProduct({{2, 8}, {5, 100, 1000}});

static void BM_KernelMatrix(benchmark::State& state) {
  const KernelParams p(2, 2, 0.5);
  const auto X = generate_points(CubeDomain::unit(2), PointKind::Halton, static_cast<double>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix(p, X, X));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelMatrix)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

static void BM_Fit(benchmark::State& state) {
  const KernelParams p(2, 2, 0.1);
  const auto X = generate_points(CubeDomain::unit(2), PointKind::Halton, static_cast<double>(state.range(0)), 0);
  Eigen::VectorXd f(static_cast<Eigen::Index>(X.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = std::sin(3.0 * X.coords()(i, 0)) * std::cos(2.0 * X.coords()(i, 1));
  for (auto _ : state) benchmark::DoNotOptimize(fit(p, X, f, {.force = true}));
}
BENCHMARK(BM_Fit)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

static void BM_BoundConstants(benchmark::State& state) {
  const KernelParams p(static_cast<int>(state.range(0)), 2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(bound_constants(p));
}
BENCHMARK(BM_BoundConstants)->Arg(2)->Arg(4)->Arg(10);
BENCHMARK_MAIN();
