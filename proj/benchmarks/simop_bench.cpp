#include <benchmark/benchmark.h>

#include <random>

#include "simop/kernels.hpp"
#include "simop/similarity.hpp"

using namespace simop;

namespace {

SpectralFrame integer_frame(int n) { return SpectralFrame::arithmetic(0.0, 1.0, static_cast<std::size_t>(n)); }

Matrix random_matrix(int n, double norm, bool lower) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (lower && j >= i) ? Complex(0.0, 0.0) : Complex(d(rng), d(rng));
  return m * (norm / operator_norm(m, NormKind::spectral));
}

void BM_PsiL1Norm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(psi_l1_norm(1.0).value);
}
BENCHMARK(BM_PsiL1Norm)->Unit(benchmark::kMillisecond);

void BM_FixedPointPhi1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = integer_frame(n);
  const OperatorMatrix b(f, random_matrix(n, 0.04, false));
  IterationConfig c;
  c.variant = Variant::phi1;
  c.a = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(iterate_fixed_point(f, b, c).iterations);
}
BENCHMARK(BM_FixedPointPhi1)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_HypercausalSeries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = integer_frame(n);
  const OperatorMatrix b(f, random_matrix(n, 5.0, true));
  IterationConfig c;
  c.variant = Variant::series;
  c.a = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(hypercausal_series(f, b, c).iterations);
}
BENCHMARK(BM_HypercausalSeries)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
