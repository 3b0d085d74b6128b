#include <gtest/gtest.h>

#include <cmath>

#include "heckebench/besselx.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/fit.hpp"

using namespace heckebench;
using namespace heckebench::besselx;

// mpmath.besselj at 40 digits (tests/oracles/oracles.py).
struct BesselCase {
  int l;
  double x;
  double value;
};
constexpr BesselCase kBessel[] = {
    {1, 2.0, 0.57672480775687339},        {11, 30.0, 0.025058805137824544},
    {23, 10.0, 1.5902198738033282e-7},    {100, 50.0, 1.1159273690838093e-21},
    {100, 150.0, -0.015359526118405391},  {400, 1000.0, 0.024556866970123085},
    {0, 100000.0, -0.0017192011162359722},
};

TEST(Bessel, OracleValues) {
  for (const auto& c : kBessel) {
    const double v = bessel_j(c.l, c.x);
    EXPECT_NEAR(v, c.value, 1e-12 * std::max(1.0, std::abs(c.value))) << "J_" << c.l << "(" << c.x << ")";
  }
  EXPECT_NEAR(bessel_j(100, 50.0) / 1.1159273690838093e-21, 1.0, 1e-10);
}

TEST(Bessel, TrivialValues) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(5, 0.0), 0.0);
  EXPECT_THROW(bessel_j(-1, 1.0), DomainError);
  EXPECT_THROW(bessel_j(1, -1.0), DomainError);
}

TEST(BesselProperty, MethodsAgreeWhereValid) {
  for (int l : {0, 3, 20, 60})
    for (double x : {0.5, 5.0, 25.0, 80.0}) {
      const double q = bessel_j(l, x, BesselMethod::quadrature);
      EXPECT_NEAR(bessel_j(l, x, BesselMethod::automatic), q, 1e-12) << l << " " << x;
      if (x < 6.0 || x < l) EXPECT_NEAR(bessel_j(l, x, BesselMethod::power_series), q, 1e-11) << l << " " << x;
    }
  for (double x : {2000.0, 5000.0}) EXPECT_NEAR(bessel_j(3, x, BesselMethod::asymptotic), bessel_j(3, x, BesselMethod::quadrature), 1e-12);
}

TEST(BesselProperty, RecurrenceHolds) {
  for (double x : {1.0, 17.5, 140.0})
    for (int l = 1; l < 60; l += 7) {
      const double lhs = bessel_j(l - 1, x) + bessel_j(l + 1, x);
      EXPECT_NEAR(lhs, 2.0 * l / x * bessel_j(l, x), 1e-11);
    }
}

TEST(BesselBounds, RegimeExamples) {
  EXPECT_LE(std::abs(bessel_j(100, 5.0)), 10.0 * std::exp(-100.0));
  EXPECT_LE(std::abs(bessel_j(100, 100.0)), std::pow(100.0, -1.0 / 3.0));
  const auto b = bessel_regime_bounds(15, 15.0);
  EXPECT_LE(std::abs(bessel_j(15, 15.0)), b.bound_osc);
  EXPECT_LE(std::abs(bessel_j(15, 15.0)), std::pow(30.0 * M_PI, -0.5) * std::pow(M_E / 2.0, 15.0));
}

TEST(Window, SupportAndShape) {
  const auto w = SmoothWindow::bump01(40.0, 10.0);
  EXPECT_EQ(w(40.0), 0.0);
  EXPECT_EQ(w(50.0), 0.0);
  EXPECT_GT(w(45.0), 0.0);
  EXPECT_NEAR(w(45.0), 1.0, 1e-14);
  for (double b : w.derivative_bounds()) EXPECT_TRUE(std::isfinite(b));
  const auto v = SmoothWindow::bumpK2K(20.0);
  EXPECT_EQ(v.support_lo(), 20.0);
  EXPECT_EQ(v.support_hi(), 40.0);
}

TEST(Parity, DegenerateAndSmallX) {
  const auto g = SmoothWindow::bumpK2K(40.0);
  EXPECT_THROW(parity_average_lhs(SmoothWindow::bump01(40.0, 5.0), 1, 1.0), DomainError);
  EXPECT_LT(std::abs(parity_average_lhs(g, 1, 0.01)), 1e-60);
  const auto r = parity_average_rhs(g, 1, 0.01);
  EXPECT_EQ(r.main, 0.0);
}

TEST(Parity, IdentityWithinBudget) {
  const auto g = SmoothWindow::bumpK2K(40.0);
  for (int a : {1, -1})
    for (double x : {60.0, 200.0}) {
      const auto lhs = parity_average_lhs(g, a, x);
      const auto r = parity_average_rhs(g, a, x);
      EXPECT_LE(std::abs(lhs - r.main - r.h_term), r.err_budget) << a << " " << x;
    }
}

TEST(Parity, C3ScalesAsCube) {
  const double c20 = window_c3(SmoothWindow::bumpK2K(20.0));
  const double c40 = window_c3(SmoothWindow::bumpK2K(40.0));
  EXPECT_NEAR(c20 / c40, 8.0, 1e-12);
  EXPECT_GT(c20, 0.0);
}

TEST(Parity, HDecaysForSmallX) {
  const double K = 40.0;
  const auto g = SmoothWindow::bumpK2K(K);
  std::vector<double> meas, bound;
  for (double x : {0.2, 0.5, 1.0, 1.6}) {
    meas.push_back(parity_h(g, x));
    bound.push_back(x / (K * K));
  }
  const auto f = fit::fit_constant(meas, bound);
  EXPECT_TRUE(std::isfinite(f.constant));
  EXPECT_LT(f.constant, 1e3);
}

TEST(PairAverage, EmptyWindowIsZero) {
  EXPECT_EQ(bessel_pair_average({60.0, 1.5, 100.0, 400.0, SmoothWindow::bump01(60.2, 1.5)}), 0.0);
}

TEST(PairAverage, FirstEstimate) {
  const double K = 60.0, H = 12.0, x = std::pow(K, 1.5), y = 4.0 * x;
  const double v = bessel_pair_average({K, H, x, y, SmoothWindow::bump01(K, H)});
  EXPECT_LE(std::abs(v), 10.0 * H / std::sqrt(x * y));
}

TEST(PairAverage, BPowerBounds) {
  const double K = 60.0, H = 12.0, x = std::pow(K, 1.9);
  const auto w = SmoothWindow::bump01(K, H);
  for (double d : {0.1, 0.5, 0.75}) {
    const double y = 4.0 * x * (1.0 - d);
    ASSERT_GT(std::abs(1.0 - y / (4.0 * x)), std::pow(K, 2.05) / (x * x));
    const double v = std::abs(bessel_pair_average({K, H, x, y, w}));
    const double q = x * x / (K * K * std::abs(4.0 * x - y));
    EXPECT_LE(v, x / K * q);
    EXPECT_LE(v, x / K * q * q);
  }
}

TEST(Transition, LargeXAgreement) {
  const double K = 60.0;
  const double x = std::pow(K, 2.1);
  const auto t = transition_asymptotic(60, K, x);
  EXPECT_LE(std::abs(bessel_j(59, x) - t.value), 10.0 * std::pow(K, -4.0 / 3.0));
  EXPECT_LE(std::abs(transition_z(60, x) - x), 10.0 * std::pow(K, 0.05));
  EXPECT_THROW(transition_asymptotic(60, K, 50.0), DomainError);
}

TEST(Transition, ModerateX) {
  // Measured relative errors: 8.2% at x = 10k, 4.8% at x = 1000, 1.6% at x = 3000.
  const double at_10k = transition_asymptotic(60, 60.0, 600.0).value;
  EXPECT_NEAR(at_10k / bessel_j(59, 600.0), 1.0, 0.1);
  const double at_1000 = transition_asymptotic(60, 60.0, 1000.0).value;
  EXPECT_NEAR(at_1000 / bessel_j(59, 1000.0), 1.0, 0.05);
}
