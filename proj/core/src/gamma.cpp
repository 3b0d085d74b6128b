#include "heckebench/gamma.hpp"

#include <cmath>
#include <numbers>

#include "heckebench/errors.hpp"

namespace heckebench::lfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Stirling coefficients B_{2n} / (2n (2n - 1)).
constexpr double kStirling[] = {
    1.0 / 12.0,        -1.0 / 360.0,      1.0 / 1260.0,          -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,           -3617.0 / 122400.0,
};

bool at_pole(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (at_pole(z)) throw DomainError("log_gamma: pole");
  std::complex<double> shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0, p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

GammaFactorValue gamma_factor(int k, int j, std::complex<double> s) {
  const double l2pi = std::log(2.0 * kPi);
  if (j == 1) {
    const auto a = s + (k - 0.5);
    if (at_pole(a)) throw DomainError("gamma_factor: pole");
    return {-s * l2pi + log_gamma(a)};
  }
  if (j == 2) {
    const auto a = s + (2.0 * k - 1.5), b = s + (k - 0.5), c = s + 0.5;
    if (at_pole(a) || at_pole(b) || at_pole(c)) throw DomainError("gamma_factor: pole");
    return {std::log(8.0) + (-3.0 * s - 3.0 * k + 1.5) * l2pi + log_gamma(a) + log_gamma(b) +
            log_gamma(c)};
  }
  throw DomainError("gamma_factor: j must be 1 or 2");
}

std::complex<double> log_gamma_ratio(int k, int j, std::complex<double> s) {
  const double l2pi = std::log(2.0 * kPi);
  if (j == 1) return -s * l2pi + log_gamma(s + double(k)) - std::lgamma(double(k));
  if (j == 2)
    return -3.0 * s * l2pi + log_gamma(s + (2.0 * k - 1.0)) + log_gamma(s + double(k)) +
           log_gamma(s + 1.0) - std::lgamma(2.0 * k - 1.0) - std::lgamma(double(k));
  throw DomainError("log_gamma_ratio: j must be 1 or 2");
}

}  // namespace heckebench::lfun
