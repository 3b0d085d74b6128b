#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heckebench/eigenform_store.hpp"
#include "heckebench/forms.hpp"
#include "heckebench/window.hpp"

namespace heckebench::moments {

using forms::EigenformRecord;

/// 6/pi, the limit of the weight-window average.
inline constexpr double kMainTerm = 6.0 / std::numbers::pi;
inline constexpr const char* kNormalization =
    "||F||_2 = ||G||_2 = 1, measure dx dy / y^2 on {|x| <= 1/2, |z| >= 1}";
/// Default relative tolerance of the fundamental-domain quadratures.
inline constexpr double kQuadratureTol = 1e-9;

/// B_k with enough coefficients for every moment routine (f side).
forms::EigenformSet moment_forms_f(int k);
/// B_{2k} with enough coefficients for the Watson right side (g side).
forms::EigenformSet moment_forms_g(int k);

// ---------------------------------------------------------------------------
// Watson's formula and fourth moments

struct WatsonResult {
  int k = 0;
  int f_index = 0;
  int g_index = 0;
  double lhs = 0.0;            ///< |<F^2, G>|^2 by quadrature, unit norms
  double rhs = 0.0;            ///< pi^3/(2(2k-1)) L(1/2,g) L(1/2,sym^2 f x g) / (L(1,sym^2 f)^2 L(1,sym^2 g))
  double ratio = 0.0;          ///< lhs / rhs, NaN when indeterminate
  bool indeterminate = false;  ///< |rhs| < 1e-14
  double l_half_g = 0.0;
  double l_half_sym2fg = 0.0;
  double l1_sym2f = 0.0;
  double l1_sym2g = 0.0;
  double norm2_f = 0.0;        ///< int |y^{k/2} f|^2 at a_f(1) = 1
  double norm2_g = 0.0;
};

WatsonResult watson_check(const EigenformRecord& f, const EigenformRecord& g,
                          double tol = kQuadratureTol);

struct GContribution {
  int g_index = 0;
  double l_half_g = 0.0;
  double l_half_sym2fg = 0.0;
  double l1_sym2g = 0.0;
  double value = 0.0;     ///< the Watson right side for this g
  bool negative = false;  ///< value < 0, which can only be numerical error
};

struct MomentReport {
  int k = 0;
  int f_index = 0;
  double l1_sym2f = 0.0;
  std::vector<GContribution> per_g;
  double spectral_total = 0.0;        ///< sum of per_g values in index order
  std::optional<double> direct;       ///< quadrature value when computed
  double main_term = kMainTerm;
  double abs_discrepancy = 0.0;       ///< |spectral - direct|, 0 without direct
  double rel_discrepancy = 0.0;       ///< abs_discrepancy / direct
  bool flagged_negative = false;
  std::string normalization = kNormalization;
};

/// ||F||_4^4 from Watson's formula summed over B_{2k}.
MomentReport fourth_moment_spectral(const EigenformRecord& f);

/// ||F||_4^4 = int |F|^4 / (int |F|^2)^2 by quadrature.
double fourth_moment_direct(const EigenformRecord& f, double tol = kQuadratureTol);

/// Spectral report with the direct value and discrepancies filled in.
MomentReport fourth_moment_report(const EigenformRecord& f, double tol = kQuadratureTol);

// ---------------------------------------------------------------------------
// Main term

struct MainTermResult {
  int k = 0;
  int f_index = 0;
  double sum_value = 0.0;   ///< sum A_f(n,r) V_{k,1}(n) V_{k,2}(n r^2) / (n r)
  double target = 0.0;      ///< (6/pi^2) L(1, sym^2 f)^2
  double defect = 0.0;
  double sum_r1_only = 0.0; ///< the same sum restricted to r = 1
  long n_max = 0;           ///< V_{k,1} cut-off
  long nr2_max = 0;         ///< V_{k,2} cut-off
};

MainTermResult main_term_check(const EigenformRecord& f);

// ---------------------------------------------------------------------------
// Weight-window average

struct WindowTerm {
  int k = 0;
  double weight = 0.0;                  ///< w((k - K)/H)
  std::vector<double> fourth_moments;   ///< spectral ||F||_4^4 per f in B_k
};

struct WindowAverage {
  double K = 0.0;
  double H = 0.0;
  double average = 0.0;  ///< (2/(H W)) sum_k w((k-K)/H) (12/k) sum_f ||F||_4^4
  double main = kMainTerm;
  double defect = 0.0;   ///< |average - main|
  std::vector<WindowTerm> terms;
  std::optional<double> direct_check_k;    ///< weight used for the quadrature cross-check
  std::optional<double> direct_check_rel;  ///< max relative spectral/direct gap there
};

/// Requires a bump01 window (support (K, K+H)), K <= 40 and H <= K. Throws
/// DomainError when no even weight with a non-empty cusp space lies in the support.
WindowAverage weight_window_average(const besselx::SmoothWindow& window, bool direct_check = false);

// ---------------------------------------------------------------------------
// Off-diagonal terms

enum class E1Mode { direct, smoothed };
const char* to_string(E1Mode mode);

struct E1Params {
  double K = 40.0;
  double H = 0.0;             ///< 0 means K^{0.8}
  long r1 = 1;
  long r2 = 0;                ///< 0 means r2 = r1
  long alpha = 1;
  long beta = 1;
  long gamma = 1;
  int gamma_exponent = 4;     ///< exponent of gamma inside V_{k,2}
  double eps = 0.05;          ///< sums run over m <= K^{1+eps}, c <= K^{1/2+eps}
  double param_eps = 0.5;     ///< r1, r2, alpha, beta, gamma must be <= K^{param_eps}
  bool include_weights = false;  ///< direct mode: keep (k-1)/K, V_{k,1}(m), V_{k,2}(...)
};

struct E1Result {
  std::complex<double> value;
  E1Mode mode = E1Mode::direct;
  double K = 0.0;
  double H = 0.0;
  long m_max = 0;
  long c_max = 0;
  int even_weights = 0;       ///< number of even k in (K, K + H)
};

E1Result error_e1(const E1Params& params, E1Mode mode);

struct E1Budget {
  double budget = 0.0;    ///< (1/(8 pi^2 H)) sum |S|/(sqrt(m r1) c) (|h(x)| + C x c3)
  double h_part = 0.0;
  double c3_part = 0.0;
  double c3 = 0.0;        ///< c3 of the order window
};

/// Parity-average error budget between the direct (unweighted) and smoothed modes.
E1Budget error_e1_budget(const E1Params& params);

enum class Region { E1, E2, E3 };
const char* to_string(Region region);

struct RegionPoint {
  long n = 1, m = 1, c1 = 1, c2 = 1, r1 = 1, alpha = 1, beta = 1, gamma = 1;
};

struct RegionLabel {
  RegionPoint point;
  Region label = Region::E3;
};

RegionLabel classify_region(const RegionPoint& p, double K, double eps = 0.05);

struct RegionRow {
  RegionLabel label;
  double K = 0.0;
  double H = 0.0;
  double x = 0.0;                 ///< 4 pi n r1 / c2
  double y = 0.0;                 ///< 4 pi sqrt(n m alpha beta^2) / c1
  double measured = 0.0;          ///< |pair average|
  std::string bound_name;         ///< "large_x", "h_over_sqrt_xy", "min_h_over_sqrt_xy_1"
  double bound = 0.0;
  double fitted_constant = 0.0;   ///< measured / bound
  std::optional<double> b_power_bound;  ///< (x/K)(x^2/(K^2|4x-y|))^B, B = 1, when applicable
  std::optional<double> b_power_bound_2;  ///< the same with B = 2
};

/// Classifies every grid point and measures the pair average against its bound.
std::vector<RegionRow> region_sweep(double K, double H, const std::vector<RegionPoint>& grid,
                                    double eps = 0.05, unsigned threads = 1);

/// Default desk grid at weight scale K: points in all three regions with x >~ K.
std::vector<RegionPoint> default_region_grid(double K, double eps = 0.05);

}  // namespace heckebench::moments
