#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "kvb/coulomb/radial_coulomb.hpp"
#include "kvb/extension/extension.hpp"
#include "kvb/fem/fd_oracle.hpp"
#include "kvb/interval/laplacian.hpp"
#include "kvb/numerics/digamma.hpp"
#include "kvb/numerics/eigen.hpp"
#include "kvb/point/point_interaction.hpp"

namespace {

using namespace kvb;

void BM_JacobiDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  num::SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(num::eig_sym_full(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiDense)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SlicingLowest(benchmark::State& state) {
  const auto op = fem::assemble(static_cast<std::size_t>(state.range(0)), fem::AntiPeriodicRobin{1.0});
  for (auto _ : state) benchmark::DoNotOptimize(fem::lowest_eigenvalues(op, 6));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SlicingLowest)->RangeMultiplier(4)->Range(125, 8000)->Complexity();

void BM_VerifyInterval(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fem::verify_interval(-1.0, 2000));
}
BENCHMARK(BM_VerifyInterval)->Unit(benchmark::kMillisecond);

void BM_Digamma(benchmark::State& state) {
  double z = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(num::digamma(z));
    z = z < 1e6 ? z * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_Digamma);

void BM_IntervalSpectrum(benchmark::State& state) {
  const double cutoff = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interval::spectrum(9.0, cutoff));
}
BENCHMARK(BM_IntervalSpectrum)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_IntervalTq(benchmark::State& state) {
  const auto terms = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_q(interval::deficiency_model(terms)));
}
BENCHMARK(BM_IntervalTq)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PointTq(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_q(point::deficiency_model()));
}
BENCHMARK(BM_PointTq)->Unit(benchmark::kMillisecond);

void BM_CoulombEigenvalue(benchmark::State& state) {
  const double alpha = coulomb::alpha_threshold(1.0) - 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(coulomb::coulomb_eigenvalue(1.0, alpha));
}
BENCHMARK(BM_CoulombEigenvalue)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
