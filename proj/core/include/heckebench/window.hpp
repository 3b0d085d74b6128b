#pragma once

#include <array>

namespace heckebench::besselx {

/// Canonical bump w(t) = exp(4 - 1/(t(1-t))) on (0, 1), scaled so that w(1/2) = 1.
double bump(double t);
/// j-th derivative of the canonical bump, j <= 6.
double bump_derivative(int j, double t);
/// Integral of the canonical bump over (0, 1).
double bump_integral();

enum class WindowKind {
  bump01,   ///< g(x) = w((x - K)/H), supported on (K, K + H)
  bumpK2K,  ///< g(x) = w((x - K)/K), supported on (K, 2K)
};

/// Smooth non-negative compactly supported window built from the canonical bump.
class SmoothWindow {
 public:
  static constexpr int kCertifiedOrders = 7;

  /// Window w((x - K)/H) on (K, K + H). Requires K > 0, H > 0.
  static SmoothWindow bump01(double K, double H);
  /// Window w((x - K)/K) on (K, 2K). Requires K > 0.
  static SmoothWindow bumpK2K(double K);

  WindowKind kind() const { return kind_; }
  double K() const { return K_; }
  double H() const { return H_; }
  double support_lo() const { return K_; }
  double support_hi() const { return K_ + H_; }

  double operator()(double x) const;
  /// j-th derivative in x, j <= 6.
  double derivative(int j, double x) const;
  /// B_j with |g^{(j)}| <= B_j, j = 0..6.
  const std::array<double, kCertifiedOrders>& derivative_bounds() const { return bounds_; }
  /// Integral of g over the real line (H times the bump integral).
  double integral() const;

 private:
  SmoothWindow(WindowKind kind, double K, double H);

  WindowKind kind_;
  double K_;
  double H_;
  std::array<double, kCertifiedOrders> bounds_{};
};

}  // namespace heckebench::besselx
