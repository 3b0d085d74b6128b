#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "heckebench/forms.hpp"

namespace heckebench::lfun {

/// V_{k,j}(xi) = (1/2 pi i) int_{(sigma)} Gamma_{k,j}(1/2+s)/Gamma_{k,j}(1/2) xi^{-s} ds/s.
///
/// The contour Re s = 1 is cut at T = max(30, 8 sqrt(j k ln(1/tol))) and further at the
/// height where |Gamma ratio| < 1e-30; the node table (20-point Gauss-Legendre on
/// panels of width 1/4) and the log Gamma ratio at each node are built once.
class AfeWeight {
 public:
  static constexpr double kSigma = 1.0;

  AfeWeight(int k, int j, double tol = 1e-10);

  /// Real part of the contour integral, using conjugate symmetry of the integrand.
  double operator()(double xi) const;
  /// Integrates both half-lines separately; the imaginary part is a realness check.
  std::complex<double> evaluate_complex(double xi) const;
  /// Same integral with an explicit cut height (fresh nodes); for doubling tests.
  double evaluate_with_height(double xi, double T) const;

  /// Smallest integer X with |V(xi)| < threshold for every integer xi >= X (V decays monotonically
  /// past its transition; found by doubling and bisection).
  long support(double threshold) const;

  int k() const { return k_; }
  int j() const { return j_; }
  double sigma() const { return kSigma; }
  double tolerance() const { return tol_; }
  /// Nominal truncation height from the Gaussian-width model.
  double truncation_height() const { return T_; }
  /// Height where the node table actually stops.
  double effective_height() const { return T_eff_; }
  /// Bound on the discarded contour beyond the effective height, at xi = 1.
  double achieved() const { return achieved_; }

 private:
  int k_;
  int j_;
  double tol_;
  double T_;
  double T_eff_;
  double achieved_ = 0.0;
  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<std::complex<double>> log_ratio_;
};

/// Shared immutable evaluator per (k, j) at the default tolerance.
std::shared_ptr<const AfeWeight> afe_weight_for(int k, int j);

/// V_{k,j}(xi) through the shared evaluator. xi must be positive.
double afe_weight(int k, int j, double xi);

/// V_{k,j}(1), ..., V_{k,j}(upto) (index 0 unused), cached per (k, j) and grown on demand.
std::shared_ptr<const std::vector<double>> afe_table(int k, int j, long upto);

/// Cut-offs used by the L-value sums (|V| < 1e-13 beyond them).
long central_g_cutoff(int k);
long sym2fg_cutoff(int k);
/// Coefficient budgets (N of the eigenform record) needed by the routines below.
int required_truncation_central_g(int k);
int required_truncation_sym2fg(int k);
int required_truncation_sym2_at1(int k);

enum class LKind { central_g, central_sym2fg, sym2_at_1 };
enum class Sym2Method { dirichlet, mollified, trace_inversion };

const char* to_string(LKind kind);
const char* to_string(Sym2Method method);

struct LValueRecord {
  LKind kind = LKind::central_g;
  std::string method;
  int k_f = 0;
  int f_index = -1;
  int k_g = 0;
  int g_index = -1;
  double value = 0.0;
  double imag_residue = 0.0;
  double stability_delta = 0.0;  ///< |value(truncation) - value(truncation_check)|
  long truncation = 0;
  long truncation_check = 0;
  bool suspicious = false;       ///< central value below 1e-6 in magnitude
};

/// L(1/2, g) = 2 sum a_g(m) m^{-1/2} V_{k,1}(m), g of weight 2k.
LValueRecord l_central_g(const forms::EigenformRecord& g);

/// L(1/2, sym^2 f x g) = 2 sum A_f(n, r) a_g(n) (n r^2)^{-1/2} V_{k,2}(n r^2), f weight k, g weight 2k.
LValueRecord l_central_sym2fg(const forms::EigenformRecord& f, const forms::EigenformRecord& g);

struct Sym2Options {
  double delta = 0.09;  ///< mollifier exponent, 0 < delta < 1/10
  int c_max = 200;      ///< Kloosterman cut-off for trace inversion
};

/// L(1, sym^2 f) by the chosen route.
///   dirichlet: sum A_f(n,1)/n exp(-(n/N)^2) with N = 8k, checked against N = 4k.
///   mollified: the reciprocal of the damped triple sum for L(1, sym^2 f)^{-1}.
///   trace_inversion: the n = m = 1 Petersson identity on a one-dimensional S_k.
LValueRecord l_sym2_at1(const forms::EigenformRecord& f, Sym2Method method,
                        const Sym2Options& options = {});

/// The damped triple sum itself (an estimate of L(1, sym^2 f)^{-1}).
double mollified_inverse(const forms::EigenformRecord& f, double delta);

std::string lvalue_csv_header();
std::string lvalue_csv_row(const LValueRecord& r);

}  // namespace heckebench::lfun
