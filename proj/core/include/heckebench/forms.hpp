#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace heckebench::forms {

using Int = std::int64_t;

/// Dimension of the level-1 cusp space S_k (k even >= 4; 0 below weight 12).
int cusp_dimension(int k);

/// Exact integer q-expansion basis of S_k in reduced echelon (Miller) form:
/// row i (0-based) has coefficient 1 at q^{i+1} and 0 at every other q^{j+1}, j < dim.
struct QExpansionBasis {
  int k = 0;
  int N = 0;                                   ///< coefficients q^0 .. q^N are kept
  std::vector<std::vector<mpz_class>> rows;    ///< rows[i][n], n = 0..N

  int dimension() const { return static_cast<int>(rows.size()); }
  const mpz_class& coefficient(int i, int n) const { return rows.at(i).at(n); }
};

QExpansionBasis cusp_basis(int k, int N);

enum class HeckeOperator { automatic, T2, T3 };

const char* to_string(HeckeOperator op);

struct EigenformRecord {
  int k = 0;
  int index = 0;                 ///< position in B_k, ordered by a_f(2)
  int N = 0;                     ///< stored coefficients a_f(1..N)
  std::vector<double> a;         ///< a[n] = a_f(n) for 1 <= n <= N; a[0] = 0
  int precision_bits = 0;        ///< MPFR working precision (0 when loaded from cache)
  HeckeOperator diagonalized = HeckeOperator::T2;

  /// a_f(n); beyond N it is assembled from a_f(p), p <= N, by multiplicativity and
  /// a(p^{e+1}) = a(p) a(p^e) - a(p^{e-1}). Throws ParameterError if a prime factor exceeds N.
  double coefficient(Int n) const;
  /// a_f(n) n^{(k-1)/2}, the arithmetically normalized q-coefficient.
  double raw(Int n) const;
  std::string precision_tag() const;
};

/// Hecke eigenbasis of S_k from the exact basis truncated at N, sorted by a_f(2)
/// ascending. `automatic` diagonalizes T_2 and falls back to T_3 if T_2 has a
/// repeated eigenvalue. Throws ParameterError when N is too small for the Hecke matrix.
std::vector<EigenformRecord> hecke_eigenforms(int k, int N,
                                              HeckeOperator op = HeckeOperator::automatic);

/// Characteristic polynomial of the T_p matrix on the Miller basis, coefficients in
/// ascending degree (monic). Exact.
std::vector<mpz_class> hecke_charpoly(int k, int p, int N);

/// A_f(n, r) for 1 <= n <= n_max, 1 <= r <= r_max.
struct Gl3Coefficients {
  int k = 0;
  int index = 0;
  int n_max = 0;
  int r_max = 0;
  std::vector<double> values;    ///< row-major, (n-1) * r_max + (r-1)

  double operator()(int n, int r) const;
};

/// A_f(n, 1) = sum_{d^2 t = n} a_f(t^2).
double gl3_a_n1(const EigenformRecord& f, Int n);

/// A_f(n, r) = sum_{d | (n, r)} mu(d) A_f(n/d, 1) A_f(r/d, 1). The first call per
/// process validates this against a brute-force expansion of
/// L(s, sym^2 f) L(w, sym^2 f) / zeta(s + w) (see gl3_dirichlet_defect).
Gl3Coefficients gl3_coefficients(const EigenformRecord& f, int n_max, int r_max);

/// max |A_f(n, r) - coefficient of n^{-s} r^{-w}| over n, r <= bound, where the
/// right side comes from multiplying out the three Dirichlet series term by term.
double gl3_dirichlet_defect(const EigenformRecord& f, int bound = 50);

}  // namespace heckebench::forms
