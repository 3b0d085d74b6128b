#include "heckebench/window.hpp"

#include <algorithm>
#include <cmath>

#include "heckebench/errors.hpp"
#include "heckebench/quadrature.hpp"

namespace heckebench::besselx {

namespace {

constexpr int kJet = SmoothWindow::kCertifiedOrders;

// Taylor coefficients of the bump at t (coefficient n is w^{(n)}(t)/n!).
std::array<double, kJet> bump_jet(double t) {
  std::array<double, kJet> e{};
  if (t <= 0.0 || t >= 1.0) return e;
  std::array<double, kJet> u{}, v{}, phi{};
  u[0] = t * (1.0 - t);
  u[1] = 1.0 - 2.0 * t;
  u[2] = -1.0;
  v[0] = 1.0 / u[0];
  for (int n = 1; n < kJet; ++n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += u[i] * v[n - i];
    v[n] = -s * v[0];
  }
  for (int n = 0; n < kJet; ++n) phi[n] = -v[n];
  phi[0] += 4.0;
  e[0] = std::exp(phi[0]);
  for (int n = 1; n < kJet; ++n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += i * phi[i] * e[n - i];
    e[n] = s / n;
  }
  return e;
}

double factorial(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return f;
}

}  // namespace

double bump(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (t * (1.0 - t)));
}

double bump_derivative(int j, double t) {
  if (j < 0 || j >= kJet) throw ParameterError("bump derivative order must be in [0, 6]");
  return factorial(j) * bump_jet(t)[j];
}

double bump_integral() {
  static const double value = quad::composite_gl(bump, 0.0, 1.0, 64, 20);
  return value;
}

SmoothWindow SmoothWindow::bump01(double K, double H) {
  if (!(K > 0.0) || !(H > 0.0)) throw DomainError("window needs K > 0 and H > 0");
  return SmoothWindow(WindowKind::bump01, K, H);
}

SmoothWindow SmoothWindow::bumpK2K(double K) {
  if (!(K > 0.0)) throw DomainError("window needs K > 0");
  return SmoothWindow(WindowKind::bumpK2K, K, K);
}

SmoothWindow::SmoothWindow(WindowKind kind, double K, double H) : kind_(kind), K_(K), H_(H) {
  // Sampled maxima of |w^{(j)}| on a dense grid, padded by 5%.
  static const std::array<double, kJet> base = [] {
    std::array<double, kJet> m{};
    constexpr int samples = 20000;
    for (int i = 1; i < samples; ++i) {
      const auto e = bump_jet(static_cast<double>(i) / samples);
      for (int j = 0; j < kJet; ++j) m[j] = std::max(m[j], std::abs(factorial(j) * e[j]));
    }
    for (double& v : m) v *= 1.05;
    return m;
  }();
  for (int j = 0; j < kJet; ++j) bounds_[j] = base[j] * std::pow(H_, -j);
}

double SmoothWindow::operator()(double x) const { return bump((x - K_) / H_); }

double SmoothWindow::derivative(int j, double x) const {
  return bump_derivative(j, (x - K_) / H_) * std::pow(H_, -j);
}

double SmoothWindow::integral() const { return H_ * bump_integral(); }

}  // namespace heckebench::besselx
