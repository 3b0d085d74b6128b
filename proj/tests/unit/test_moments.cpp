#include <gtest/gtest.h>

#include <cmath>

#include "heckebench/errors.hpp"
#include "heckebench/fit.hpp"
#include "heckebench/moments.hpp"

using namespace heckebench;
using namespace heckebench::moments;
using besselx::SmoothWindow;

namespace {
// int |y^6 Delta|^4 / (int |y^6 Delta|^2)^2 by scipy nquad (tests/oracles/oracles.py).
constexpr double kDeltaFourthMoment = 2.660459520588905;
}  // namespace

TEST(Watson, DeltaPairs) {
  const auto& f = moment_forms_f(12)->front();
  double sum = 0.0;
  for (const auto& g : *moment_forms_g(12)) {
    const auto w = watson_check(f, g);
    EXPECT_FALSE(w.indeterminate);
    EXPECT_GE(w.lhs, 0.0);
    EXPECT_NEAR(w.ratio, 1.0, 1e-3);
    sum += w.lhs;
  }
  EXPECT_NEAR(sum / kDeltaFourthMoment, 1.0, 1e-9);
}

TEST(FourthMoment, SpectralAndDirect) {
  const auto& f = moment_forms_f(12)->front();
  const auto r = fourth_moment_report(f);
  EXPECT_NEAR(r.spectral_total / kDeltaFourthMoment, 1.0, 1e-9);
  ASSERT_TRUE(r.direct.has_value());
  EXPECT_NEAR(*r.direct / kDeltaFourthMoment, 1.0, 1e-9);
  EXPECT_LT(r.rel_discrepancy, 1e-3);
  double total = 0.0;
  for (const auto& c : r.per_g) {
    EXPECT_GE(c.value, -1e-10);
    total += c.value;
  }
  EXPECT_EQ(total, r.spectral_total);
}

TEST(FourthMoment, ScaleInvariance) {
  auto f = moment_forms_f(12)->front();
  const double base = fourth_moment_direct(f);
  for (auto& a : f.a) a *= 3.5;
  EXPECT_NEAR(fourth_moment_direct(f), base, 1e-10 * base);
}

TEST(FourthMomentProperty, WeightSweepOrderOne) {
  for (int k : {16, 18, 20, 22, 26})
    for (const auto& f : *moment_forms_f(k)) {
      const double v = fourth_moment_spectral(f).spectral_total;
      EXPECT_TRUE(std::isfinite(v));
      EXPECT_GT(v, 0.1);
      EXPECT_LT(v, 10.0);
    }
}

TEST(MainTerm, AblationAndShape) {
  const auto r = main_term_check(moment_forms_f(12)->front());
  EXPECT_GT(r.target, 0.0);
  EXPECT_NE(r.sum_value, r.sum_r1_only);
  EXPECT_GT(std::abs(r.sum_value - r.sum_r1_only), 1e-3);
}

TEST(WindowAverage, SingleWeightReducesToMoment) {
  const auto w = SmoothWindow::bump01(11.0, 2.0);
  const auto avg = weight_window_average(w);
  ASSERT_EQ(avg.terms.size(), 1u);
  EXPECT_EQ(avg.terms[0].k, 12);
  const double expect = 2.0 / w.integral() * w(12.0) * fourth_moment_spectral(moment_forms_f(12)->front()).spectral_total;
  EXPECT_NEAR(avg.average, expect, 1e-10 * expect);
}

TEST(WindowAverage, SanityBandAndErrors) {
  const auto avg = weight_window_average(SmoothWindow::bump01(20.0, 8.0));
  EXPECT_GT(avg.average, 0.0);
  EXPECT_LT(avg.average, 10.0);
  EXPECT_THROW(weight_window_average(SmoothWindow::bump01(12.2, 0.5)), DomainError);
  EXPECT_THROW(weight_window_average(SmoothWindow::bump01(50.0, 8.0)), ParameterError);
}

TEST(E1, DirectMatchesSmoothedWithinBudget) {
  E1Params p;
  p.K = 40.0;
  const auto d = error_e1(p, E1Mode::direct);
  const auto s = error_e1(p, E1Mode::smoothed);
  const auto b = error_e1_budget(p);
  EXPECT_LE(std::abs(d.value - s.value), b.budget);
  EXPECT_GT(d.even_weights, 0);
}

TEST(E1, EmptyWindowAndCaps) {
  E1Params p;
  p.K = 40.2;
  p.H = 1.5;
  EXPECT_EQ(error_e1(p, E1Mode::direct).value, std::complex<double>(0.0, 0.0));
  EXPECT_EQ(error_e1(p, E1Mode::smoothed).value, std::complex<double>(0.0, 0.0));
  E1Params big;
  big.K = 40.0;
  big.r1 = 100;
  EXPECT_THROW(error_e1(big, E1Mode::direct), ParameterError);
  E1Params huge;
  huge.K = 100.0;
  EXPECT_THROW(error_e1(huge, E1Mode::direct), ParameterError);
}

TEST(Regions, Classification) {
  const double K = 40.0;
  RegionPoint p;
  p.n = static_cast<long>(std::ceil(std::pow(K, 1.95))) + 1;
  EXPECT_EQ(classify_region(p, K).label, Region::E1);
  p.n = 1;
  EXPECT_EQ(classify_region(p, K).label, Region::E3);
  p.n = 1000;
  p.m = 1000;
  EXPECT_EQ(classify_region(p, K).label, Region::E2);
  p.m = 1;
  EXPECT_EQ(classify_region(p, K).label, Region::E3);
  p.c1 = 0;
  EXPECT_THROW(classify_region(p, K), DomainError);
}

TEST(RegionsProperty, TotalAndBounded) {
  const double K = 40.0;
  const auto grid = default_region_grid(K);
  const auto rows = region_sweep(K, std::pow(K, 0.8), grid, 0.05, 2);
  ASSERT_EQ(rows.size(), grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].label.point.n, grid[i].n);
    EXPECT_GT(rows[i].bound, 0.0);
    EXPECT_TRUE(std::isfinite(rows[i].measured));
    if (rows[i].label.label == Region::E3 && rows[i].x < std::pow(K, 4.0 / 3.0 - 0.05))
      EXPECT_LE(rows[i].measured, 1.0 * rows[i].bound);
  }
}

TEST(Fit, GroupsAndGrowth) {
  const std::vector<double> m{1.0, 2.0, 1.5, 0.5};
  const std::vector<double> b{1.0, 1.0, 1.0, 1.0};
  const std::vector<int> g{1, 1, 2, 2};
  const auto f = fit::fit_constant(m, b, g);
  EXPECT_EQ(f.constant, 2.0);
  ASSERT_EQ(f.group_constants.size(), 2u);
  EXPECT_EQ(f.drift, 2.0 / 1.5);
  EXPECT_EQ(f.growth, 1.0);
  EXPECT_TRUE(f.stable);
  const std::vector<int> g2{2, 2, 1, 1};
  EXPECT_EQ(fit::fit_constant(m, b, g2).growth, 2.0 / 1.5);
  const std::vector<double> grow{1.0, 3.0};
  const std::vector<double> one{1.0, 1.0};
  EXPECT_FALSE(fit::fit_constant(grow, one).stable);
  EXPECT_THROW(fit::fit_constant(grow, std::vector<double>{1.0, 0.0}), ParameterError);
  EXPECT_EQ(fit::median({3.0, 1.0, 2.0, 10.0}), 2.5);
}

TEST(Fit, ParallelMapOrderedAndRethrows) {
  const auto v = fit::parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  EXPECT_THROW(fit::parallel_map<int>(10, [](std::size_t i) -> int {
                 if (i == 7) throw DomainError("x");
                 return 0;
               }, 3),
               DomainError);
}
