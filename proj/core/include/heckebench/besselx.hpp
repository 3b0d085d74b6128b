#pragma once

#include <complex>

#include "heckebench/window.hpp"

namespace heckebench::besselx {

/// Evaluation strategies for J_l(x). `automatic` picks one by regime.
enum class BesselMethod {
  automatic,
  power_series,  ///< x small relative to the order
  quadrature,    ///< trapezoid rule on the (saddle-shifted) periodic integral
  asymptotic,    ///< Hankel expansion, x large relative to l^2
};

/// Method `automatic` would use at (l, x).
BesselMethod bessel_regime(int l, double x);

/// J_l(x) for integer l >= 0 and x >= 0.
///
/// Absolute error is below 1e-12 max(1, |J_l(x)|) for l <= 400, x <= 1e6. The
/// series and the shifted quadrature are also relatively accurate in the
/// exponentially small region x < l.
double bessel_j(int l, double x, BesselMethod method = BesselMethod::automatic);

struct RegimeBounds {
  double bound_small;  ///< e^{-l}, the x < l/10 branch
  double bound_osc;    ///< min(l^{-1/3}, |x^2 - l^2|^{-1/4})
  double bound_exp;    ///< (2 pi l)^{-1/2} (e x / (2 l))^l
};

/// Order-of-magnitude bounds for J_l(x); test oracles only. Requires l >= 1.
RegimeBounds bessel_regime_bounds(int l, double x);

// ---------------------------------------------------------------------------
// Averages over the order.

/// 4 sum_{l = a mod 4} g(l) J_l(x) over the integers in supp g.
/// Requires a bumpK2K window and a in {+1, -1}.
std::complex<double> parity_average_lhs(const SmoothWindow& g, int a, double x);

struct ParityRhs {
  double main = 0.0;                  ///< g(x)
  std::complex<double> h_term;        ///< i^{1-a} h(x)
  double err_budget = 0.0;            ///< C x c3(g)
  double h = 0.0;                     ///< h(x) itself
  double c3 = 0.0;                    ///< c3(g)
};

/// Harness constant C in the parity-average error budget C x c3(g): the largest
/// per-scale constant on the grid K in {20, 40, 80}, x in {K/2, K, 3K/2, 5K}, rounded up.
inline constexpr double kParityBudgetConstant = 5.0;

ParityRhs parity_average_rhs(const SmoothWindow& g, int a, double x,
                             double budget_constant = kParityBudgetConstant);

/// h(x) = int_0^inf g(sqrt(2xy)) sin(x + y - pi/4) (pi y)^{-1/2} dy.
double parity_h(const SmoothWindow& g, double x);

/// |g^(t)| where g^(t) = int g(y) e(t y) dy.
double window_fourier_abs(const SmoothWindow& g, double t);

/// c3(g) = int |g^(t) t^3| dt, computed once for the unit bump (truncated where
/// |g^| < 1e-13 g^(0)) and scaled by width^{-3}.
double window_c3(const SmoothWindow& g);

struct BesselPairQuery {
  double K = 0.0;
  double H = 0.0;
  double x = 0.0;
  double y = 0.0;
  SmoothWindow window = SmoothWindow::bump01(1.0, 1.0);
};

/// sum_{k even} i^k w((k - K)/H) J_{k-1}(x) J_{2k-1}(y), summed in ascending k.
double bessel_pair_average(const BesselPairQuery& q);

struct TransitionTerm {
  double value = 0.0;  ///< the approximation to J_{k-1}(x)
  double z = 0.0;      ///< z(k/K)
  double h2 = 0.0;     ///< h_2(k/K)
  int ik_sign = 1;     ///< i^k = (-1)^{k/2}
};

/// z(u) for u = k/K (so uK - 1 = k - 1).
double transition_z(int k, double x);

/// Large-x approximation of J_{k-1}(x) built from z(u) and h_2(u).
/// Requires even k and x > k - 1.
TransitionTerm transition_asymptotic(int k, double K, double x);

}  // namespace heckebench::besselx
