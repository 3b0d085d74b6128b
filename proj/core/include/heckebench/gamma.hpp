#pragma once

#include <complex>

namespace heckebench::lfun {

/// log Gamma(z) away from the poles: recurrence up to Re z >= 15, then the Stirling
/// series. The branch is continuous along vertical lines that avoid the poles.
std::complex<double> log_gamma(std::complex<double> z);

/// Gamma_{k,j}(s) in log form: value() = exp(log).
struct GammaFactorValue {
  std::complex<double> log;
  std::complex<double> value() const { return std::exp(log); }
};

/// Gamma_{k,1}(s) = (2 pi)^{-s} Gamma(s + k - 1/2);
/// Gamma_{k,2}(s) = 8 (2 pi)^{-3s-3k+3/2} Gamma(s + 2k - 3/2) Gamma(s + k - 1/2) Gamma(s + 1/2).
/// Throws DomainError at a pole of any constituent Gamma or for j outside {1, 2}.
GammaFactorValue gamma_factor(int k, int j, std::complex<double> s);

/// log(Gamma_{k,j}(1/2 + s) / Gamma_{k,j}(1/2)), the kernel of V_{k,j}.
std::complex<double> log_gamma_ratio(int k, int j, std::complex<double> s);

}  // namespace heckebench::lfun
