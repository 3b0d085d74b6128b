#pragma once

#include <complex>

#include "heckebench/forms.hpp"

namespace heckebench::forms {

enum class FdIntegrand {
  one,        ///< 1 (volume pi/3)
  abs2,       ///< |F|^2,  F = y^{k/2} f
  abs4,       ///< |F|^4
  conj_pair,  ///< F^2 conj(G),  G = y^{k} g of weight 2k
};

const char* to_string(FdIntegrand kind);

struct FdResult {
  std::complex<double> value;
  std::complex<double> corner;  ///< part with sqrt(1 - x^2) <= y <= 1
  std::complex<double> strip;   ///< part with y >= 1
  double change = 0.0;          ///< |last refinement step| relative to |value|
  int levels = 0;
};

/// Integral over {|x| <= 1/2, |z| >= 1} against dx dy / y^2, with f and g at the
/// arithmetic normalization a_f(1) = 1. The corner uses tensor Gauss-Legendre;
/// the strip uses u = 1/y (so the measure is dx du) with composite Gauss-Legendre
/// in u and the trapezoid rule in x, exact for the trigonometric polynomial in x.
/// Panels double until the relative change is below tol. k_total is the weight of
/// the integrand (k for abs2, 2k for abs4 and conj_pair); g is used only by conj_pair.
FdResult fundamental_domain_integral(int k_total, FdIntegrand kind, const EigenformRecord* f,
                                     const EigenformRecord* g, double tol);

/// Number of q-terms of F kept at height y so that the Deligne-bounded tail is below
/// rel_tol times the largest term.
int fd_terms_needed(int k, double y, double rel_tol);

}  // namespace heckebench::forms
