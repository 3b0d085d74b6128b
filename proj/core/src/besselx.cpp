#include "heckebench/besselx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "heckebench/errors.hpp"
#include "heckebench/quadrature.hpp"

namespace heckebench::besselx {

namespace {

constexpr double kPi = std::numbers::pi;

double series_limit(int l) { return std::max(4.0, 2.0 * std::sqrt(l + 1.0)); }
double asymptotic_limit(int l) { return std::max(40.0, 0.25 * l * l); }

double series(int l, double x) {
  const double half = 0.5 * x;
  const double log_first = l * std::log(half) - std::lgamma(l + 1.0);
  if (log_first < -745.0) return 0.0;
  double term = std::exp(log_first);
  double sum = term;
  const double q = half * half;
  for (int m = 1; m < 10000; ++m) {
    term *= -q / (static_cast<double>(m) * (m + l));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// cos(x - (2l+1) pi/4) and sin(...) without forming the shifted argument.
void hankel_phase(int l, double x, double& c, double& s) {
  const int octant = (2 * l + 1) % 8;
  const double phi = octant * kPi / 4.0;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phi), sp = std::sin(phi);
  c = cx * cp + sx * sp;
  s = sx * cp - cx * sp;
}

double hankel(int l, double x) {
  const double mu = 4.0 * l * l;
  double p = 0.0, q = 0.0;
  double term = 1.0;
  double prev = 2.0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (k > 2 && mag > prev) break;
    const int r = k % 4;
    if (r == 0) p += term;
    else if (r == 1) q += term;
    else if (r == 2) p -= term;
    else q -= term;
    if (mag < 1e-17) break;
    prev = mag;
  }
  double c, s;
  hankel_phase(l, x, c, s);
  return std::sqrt(2.0 / (kPi * x)) * (p * c - q * s);
}

}  // namespace

namespace detail {

// Trapezoid rule with n (even) nodes on J_l(x) = (1/2pi) int e^{i(l t - x sin t)} dt,
// shifted to Im t = acosh(l/x) when x < l so every term is O(|J_l(x)|).
double bessel_trapezoid(int l, double x, int n) {
  const double tau = x < l ? std::acosh(l / x) : 0.0;
  const double sh = std::sinh(tau);
  const int half = n / 2;
  double sum = 0.0;
  for (int j = 0; j <= half; ++j) {
    const double t = 2.0 * kPi * j / n;
    // l t reduced exactly modulo 2 pi.
    const long long lj = (static_cast<long long>(l) * j) % n;
    const double lt = 2.0 * kPi * static_cast<double>(lj) / n;
    const double st = std::sin(t);
    const double phase = tau > 0.0 ? lt - l * st : lt - x * st;
    const double mag = tau > 0.0 ? std::exp(x * sh * std::cos(t) - l * tau) : 1.0;
    const double w = (j == 0 || j == half) ? 1.0 : 2.0;
    sum += w * mag * std::cos(phase);
  }
  return sum / n;
}

int trapezoid_nodes(int l, double x) {
  const double need = l + x + 10.0 * std::cbrt(x) + 40.0;
  int n = static_cast<int>(std::ceil(need));
  n = std::max(n, 2 * l + 40);
  return n + (n % 2);
}

}  // namespace detail

BesselMethod bessel_regime(int l, double x) {
  if (x <= series_limit(l)) return BesselMethod::power_series;
  if (x >= asymptotic_limit(l)) return BesselMethod::asymptotic;
  return BesselMethod::quadrature;
}

double bessel_j(int l, double x, BesselMethod method) {
  if (l < 0) throw DomainError("Bessel order must be >= 0");
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (method == BesselMethod::automatic) method = bessel_regime(l, x);
  switch (method) {
    case BesselMethod::power_series: return series(l, x);
    case BesselMethod::asymptotic: return hankel(l, x);
    case BesselMethod::quadrature:
    case BesselMethod::automatic: break;
  }
  return detail::bessel_trapezoid(l, x, detail::trapezoid_nodes(l, x));
}

RegimeBounds bessel_regime_bounds(int l, double x) {
  if (l < 1) throw DomainError("regime bounds need l >= 1");
  RegimeBounds b{};
  b.bound_small = std::exp(-static_cast<double>(l));
  const double gap = std::abs(x * x - static_cast<double>(l) * l);
  b.bound_osc = gap > 0.0 ? std::min(std::pow(l, -1.0 / 3.0), std::pow(gap, -0.25))
                          : std::pow(l, -1.0 / 3.0);
  const double ratio = x / l;
  b.bound_exp = ratio > 0.0
                    ? std::exp(-0.5 * std::log(2.0 * kPi * l) + l * std::log(std::exp(1.0) * ratio / 2.0))
                    : 0.0;
  return b;
}

// ---------------------------------------------------------------------------

std::complex<double> parity_average_lhs(const SmoothWindow& g, int a, double x) {
  if (g.kind() != WindowKind::bumpK2K) throw DomainError("parity average needs a bumpK2K window");
  if (a != 1 && a != -1) throw DomainError("parity class a must be +1 or -1");
  if (!(x > 0.0)) throw DomainError("parity average needs x > 0");
  const long long lo = static_cast<long long>(std::floor(g.support_lo())) + 1;
  const long long hi = static_cast<long long>(std::ceil(g.support_hi())) - 1;
  const int residue = a == 1 ? 1 : 3;
  double sum = 0.0;
  for (long long l = std::max(lo, 0LL); l <= hi; ++l) {
    if (((l % 4) + 4) % 4 != residue) continue;
    const double w = g(static_cast<double>(l));
    if (w == 0.0) continue;
    sum += w * bessel_j(static_cast<int>(l), x);
  }
  return {4.0 * sum, 0.0};
}

double parity_h(const SmoothWindow& g, double x) {
  if (!(x > 0.0)) throw DomainError("h(x) needs x > 0");
  const double scale = std::sqrt(2.0 * x);
  const double u_lo = std::max(g.support_lo(), 0.0) / scale;
  const double u_hi = g.support_hi() / scale;
  if (!(u_hi > u_lo)) return 0.0;
  auto integrand = [&](double u) {
    return g(scale * u) * std::sin(x + u * u - kPi / 4.0);
  };
  // Panels sized to the local oscillation of sin(u^2), refined by doubling.
  const double cycles = (u_hi * u_hi - u_lo * u_lo) / (2.0 * kPi);
  int panels = static_cast<int>(std::ceil(2.0 * cycles)) + 8;
  double prev = quad::composite_gl(integrand, u_lo, u_hi, panels);
  for (int it = 0; it < 8; ++it) {
    panels *= 2;
    const double next = quad::composite_gl(integrand, u_lo, u_hi, panels);
    const bool done = std::abs(next - prev) <= 1e-13 * std::max(1.0, std::abs(next));
    prev = next;
    if (done) break;
  }
  return 2.0 / std::sqrt(kPi) * prev;
}

double window_fourier_abs(const SmoothWindow& g, double t) {
  const double lo = g.support_lo(), hi = g.support_hi();
  const double mid = 0.5 * (lo + hi);
  const double width = hi - lo;
  const int panels = static_cast<int>(std::ceil(std::abs(t) * width / 2.0)) + 8;
  const double re = quad::composite_gl(
      [&](double y) { return g(y) * std::cos(2.0 * kPi * t * (y - mid)); }, lo, hi, panels);
  const double im = quad::composite_gl(
      [&](double y) { return g(y) * std::sin(2.0 * kPi * t * (y - mid)); }, lo, hi, panels);
  return std::hypot(re, im);
}

namespace {

// c3 of the unit-width bump, integrated up to the first T (doubling from 8) where
// |w^(t)| < 1e-13 w^(0). The transform has an absolute noise floor near 3e-16, so
// a test on t^3 |w^(t)| itself would never pass.
double unit_c3() {
  const auto g = SmoothWindow::bump01(1.0, 1.0);
  const double floor = 1e-13 * window_fourier_abs(g, 0.0);
  double T = 8.0;
  while (window_fourier_abs(g, T) >= floor) T *= 2.0;
  auto integrand = [&](double t) { return window_fourier_abs(g, t) * t * t * t; };
  const int panels = static_cast<int>(std::ceil(4.0 * T)) + 16;
  return 2.0 * quad::composite_gl(integrand, 0.0, T, panels);
}

}  // namespace

double window_c3(const SmoothWindow& g) {
  // |g^(t)| = H |w^(H t)| for g(x) = w((x - K)/H), so c3(g) = c3(w) / H^3.
  static const double unit = unit_c3();
  const double width = g.support_hi() - g.support_lo();
  return unit / (width * width * width);
}

ParityRhs parity_average_rhs(const SmoothWindow& g, int a, double x, double budget_constant) {
  if (g.kind() != WindowKind::bumpK2K) throw DomainError("parity average needs a bumpK2K window");
  if (a != 1 && a != -1) throw DomainError("parity class a must be +1 or -1");
  if (!(x > 0.0)) throw DomainError("parity average needs x > 0");
  ParityRhs r;
  r.main = g(x);
  r.h = parity_h(g, x);
  // i^{1-a}: 1 for a = 1, -1 for a = -1.
  r.h_term = {a == 1 ? r.h : -r.h, 0.0};
  r.c3 = window_c3(g);
  r.err_budget = budget_constant * x * r.c3;
  return r;
}

double bessel_pair_average(const BesselPairQuery& q) {
  if (!(q.K > 0.0) || !(q.H > 0.0) || q.H > q.K) throw DomainError("pair average needs 0 < H <= K");
  if (!(q.x > 0.0) || !(q.y > 0.0)) throw DomainError("pair average needs x, y > 0");
  const long long lo = static_cast<long long>(std::floor(q.window.support_lo())) + 1;
  const long long hi = static_cast<long long>(std::ceil(q.window.support_hi())) - 1;
  double sum = 0.0;
  for (long long k = lo + (lo % 2 != 0 ? 1 : 0); k <= hi; k += 2) {
    if (k < 2) continue;
    const double w = q.window(static_cast<double>(k));
    if (w == 0.0) continue;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sign * w * bessel_j(static_cast<int>(k - 1), q.x) * bessel_j(static_cast<int>(2 * k - 1), q.y);
  }
  return sum;
}

double transition_z(int k, double x) {
  const double nu = k - 1.0;
  const double r = nu / x;
  const double root = std::sqrt(1.0 - r * r);
  return x * root + nu * std::atan(r / root);
}

TransitionTerm transition_asymptotic(int k, double K, double x) {
  if (k % 2 != 0 || k < 2) throw DomainError("transition asymptotic needs even k >= 2");
  if (!(K > 0.0)) throw DomainError("transition asymptotic needs K > 0");
  if (!(x > k - 1.0)) throw DomainError("transition asymptotic needs x > k - 1");
  TransitionTerm t;
  t.z = transition_z(k, x);
  const double shift = t.z - (k - 1.0) * kPi / 2.0;
  if (!(shift > 0.0)) throw DomainError("transition asymptotic: z(u) - (k-1) pi/2 must be positive");
  t.h2 = (std::sin(t.z) - std::cos(t.z)) / std::sqrt(shift);
  t.ik_sign = (k / 2) % 2 == 0 ? 1 : -1;
  // sqrt(2/(pi s)) cos(s - pi/4) with s = z - (k-1) pi/2 equals -(i^k/sqrt(pi)) h_2.
  t.value = -t.ik_sign * t.h2 / std::sqrt(kPi);
  return t;
}

}  // namespace heckebench::besselx
