#include <benchmark/benchmark.h>

#include <cmath>

#include "heckebench/arith.hpp"
#include "heckebench/besselx.hpp"
#include "heckebench/forms.hpp"
#include "heckebench/lfun.hpp"
#include "heckebench/moments.hpp"
#include "heckebench/qseries.hpp"

using namespace heckebench;

static void BM_KloostermanDirect(benchmark::State& state) {
  const auto c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::kloosterman_direct(17, 29, c));
}
BENCHMARK(BM_KloostermanDirect)->Arg(97)->Arg(1000)->Arg(10000);

static void BM_KloostermanMultiplicative(benchmark::State& state) {
  const auto c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::kloosterman_multiplicative(17, 29, c));
}
BENCHMARK(BM_KloostermanMultiplicative)->Arg(97)->Arg(1000)->Arg(10000);

static void BM_BesselJ(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const double x = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(besselx::bessel_j(l, x));
}
BENCHMARK(BM_BesselJ)->Args({1, 2})->Args({59, 60})->Args({119, 5000})->Args({400, 1000});

static void BM_QSeriesMultiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = qseries::eisenstein4(n), b = qseries::delta(n);
  for (auto _ : state) benchmark::DoNotOptimize(qseries::multiply(a, b, n));
}
BENCHMARK(BM_QSeriesMultiply)->Arg(256)->Arg(2048);

static void BM_CuspBasis(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forms::cusp_basis(k, 400));
}
BENCHMARK(BM_CuspBasis)->Arg(24)->Arg(48);

static void BM_HeckeEigenforms(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forms::hecke_eigenforms(k, 400));
}
BENCHMARK(BM_HeckeEigenforms)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_AfeWeight(benchmark::State& state) {
  const auto w = lfun::afe_weight_for(24, 2);
  double xi = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize((*w)(xi));
    xi = xi < 100.0 ? xi * 1.1 : 1.0;
  }
}
BENCHMARK(BM_AfeWeight);

static void BM_PairAverage(benchmark::State& state) {
  const double K = 60.0, H = std::pow(K, 0.8);
  const auto w = besselx::SmoothWindow::bump01(K, H);
  for (auto _ : state) benchmark::DoNotOptimize(besselx::bessel_pair_average({K, H, 2000.0, 1900.0, w}));
}
BENCHMARK(BM_PairAverage);

static void BM_E1Direct(benchmark::State& state) {
  moments::E1Params p;
  p.K = 40.0;
  for (auto _ : state) benchmark::DoNotOptimize(moments::error_e1(p, moments::E1Mode::direct));
}
BENCHMARK(BM_E1Direct)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
