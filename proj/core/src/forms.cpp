#include "heckebench/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "heckebench/arith.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/qseries.hpp"

namespace heckebench::forms {

namespace mp = boost::multiprecision;

namespace {

constexpr unsigned kDigits = 400;
using Real = mp::number<mp::mpfr_float_backend<kDigits>, mp::et_off>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

int real_bits() { return static_cast<int>(mpfr_get_prec(Real(0).backend().data())); }

qseries::Series eisenstein_weight(int w, std::size_t len, const qseries::Series& e4,
                                  const qseries::Series& e6) {
  qseries::Series one(len);
  one[0] = 1;
  if (w == 0) return one;
  const int b = (w % 4 == 0) ? 0 : 1;
  const int a = (w - 6 * b) / 4;
  qseries::Series out = qseries::power(e4, a, len);
  if (b) out = qseries::multiply(out, e6, len);
  return out;
}

// M[j][i] = coefficient of q^{j+1} in T_p b_i.
Mat hecke_matrix(const QExpansionBasis& basis, int p) {
  const int d = basis.dimension();
  if (basis.N < p * d)
    throw ParameterError("truncation N=" + std::to_string(basis.N) + " too small for T_" +
                         std::to_string(p) + " (need " + std::to_string(p * d) + ")");
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(basis.k - 1));
  Mat m(d, d);
  for (int j = 1; j <= d; ++j) {
    for (int i = 0; i < d; ++i) {
      mpz_class v = basis.rows[i][p * j];
      if (j % p == 0) v += pk * basis.rows[i][j / p];
      m(j - 1, i) = to_real(v);
    }
  }
  return m;
}

std::vector<std::vector<mpz_class>> hecke_matrix_exact(const QExpansionBasis& basis, int p) {
  const int d = basis.dimension();
  if (basis.N < p * d) throw ParameterError("truncation too small for the Hecke matrix");
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(basis.k - 1));
  std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
  for (int j = 1; j <= d; ++j)
    for (int i = 0; i < d; ++i) {
      m[j - 1][i] = basis.rows[i][p * j];
      if (j % p == 0) m[j - 1][i] += pk * basis.rows[i][j / p];
    }
  return m;
}

// Faddeev-LeVerrier; every division is exact for an integer matrix.
std::vector<mpz_class> charpoly_exact(const std::vector<std::vector<mpz_class>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n)), am(n, std::vector<mpz_class>(n));
  for (int step = 1; step <= n; ++step) {
    // m <- a m + c[n-step+1] I
    std::vector<std::vector<mpz_class>> next(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        next[i][j] = am[i][j];
        if (i == j) next[i][j] += c[n - step + 1];
      }
    m = std::move(next);
    mpz_class trace = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (int l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        am[i][j] = s;
      }
    for (int i = 0; i < n; ++i) trace += am[i][i];
    mpz_class q = -trace;
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(step));
    c[n - step] = q;
  }
  return c;
}

Real newton_refine(const std::vector<mpz_class>& poly, Real x) {
  std::vector<Real> c;
  c.reserve(poly.size());
  for (const auto& z : poly) c.push_back(to_real(z));
  for (int it = 0; it < 60; ++it) {
    Real p = 0, dp = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    if (dp == 0) break;
    const Real step = p / dp;
    x -= step;
    if (mp::abs(step) <= mp::abs(x) * Real(1e-300) || step == 0) break;
  }
  return x;
}

std::vector<Real> eigenvalues_of(const QExpansionBasis& basis, int p, const Mat& m) {
  const int d = basis.dimension();
  std::vector<Real> ev;
  if (d == 1) {
    ev.push_back(m(0, 0));
    return ev;
  }
  Eigen::EigenSolver<Mat> solver(m, false);
  if (solver.info() != Eigen::Success) throw AccuracyError("Hecke matrix eigensolver failed", 1.0);
  const auto poly = charpoly_exact(hecke_matrix_exact(basis, p));
  for (int i = 0; i < d; ++i) ev.push_back(newton_refine(poly, solver.eigenvalues()[i].real()));
  std::sort(ev.begin(), ev.end());
  return ev;
}

bool has_repeat(const std::vector<Real>& ev, double scale) {
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (mp::abs(ev[i] - ev[i - 1]) <= Real(1e-40) * Real(scale)) return true;
  return false;
}

Vec eigenvector(const Mat& m, const Real& lambda) {
  const int d = static_cast<int>(m.rows());
  Vec v(d);
  v(0) = 1;
  if (d == 1) return v;
  Mat a = m;
  for (int i = 0; i < d; ++i) a(i, i) -= lambda;
  const Mat lhs = a.rightCols(d - 1);
  const Vec rhs = -a.col(0);
  const Vec rest = lhs.colPivHouseholderQr().solve(rhs);
  for (int i = 1; i < d; ++i) v(i) = rest(i - 1);
  return v;
}

}  // namespace

int cusp_dimension(int k) {
  if (k < 0 || k % 2 != 0) throw DomainError("weight must be even and nonnegative");
  if (k < 12) return 0;
  return k / 12 - (k % 12 == 2 ? 1 : 0);
}

const char* to_string(HeckeOperator op) {
  switch (op) {
    case HeckeOperator::automatic: return "automatic";
    case HeckeOperator::T2: return "T2";
    case HeckeOperator::T3: return "T3";
  }
  return "?";
}

QExpansionBasis cusp_basis(int k, int N) {
  if (k % 2 != 0) throw DomainError("cusp_basis: weight must be even");
  if (k < 4) throw DomainError("cusp_basis: weight must be >= 4");
  const int d = cusp_dimension(k);
  if (N < d + 1) throw ParameterError("cusp_basis: N must be at least dim + 1");
  QExpansionBasis basis;
  basis.k = k;
  basis.N = N;
  if (d == 0) return basis;
  const std::size_t len = static_cast<std::size_t>(N) + 1;
  const auto e4 = qseries::eisenstein4(len);
  const auto e6 = qseries::eisenstein6(len);
  const auto delta = qseries::delta(len);
  qseries::Series dpow = delta;
  for (int j = 1; j <= d; ++j) {
    basis.rows.push_back(qseries::multiply(dpow, eisenstein_weight(k - 12 * j, len, e4, e6), len));
    if (j < d) dpow = qseries::multiply(dpow, delta, len);
  }
  // Reduce upward: row i loses its q^{j+1} component for every later row j.
  for (int i = d - 2; i >= 0; --i)
    for (int j = i + 1; j < d; ++j) {
      const mpz_class f = basis.rows[i][j + 1];
      if (sgn(f) == 0) continue;
      for (std::size_t n = 0; n < len; ++n) basis.rows[i][n] -= f * basis.rows[j][n];
    }
  return basis;
}

std::vector<mpz_class> hecke_charpoly(int k, int p, int N) {
  const auto basis = cusp_basis(k, N);
  if (basis.dimension() == 0) return {mpz_class(1)};
  return charpoly_exact(hecke_matrix_exact(basis, p));
}

std::vector<EigenformRecord> hecke_eigenforms(int k, int N, HeckeOperator op) {
  const auto basis = cusp_basis(k, N);
  const int d = basis.dimension();
  std::vector<EigenformRecord> out;
  if (d == 0) return out;

  int p = op == HeckeOperator::T3 ? 3 : 2;
  Mat m = hecke_matrix(basis, p);
  std::vector<Real> ev = eigenvalues_of(basis, p, m);
  if (op == HeckeOperator::automatic && has_repeat(ev, std::pow(2.0, (k - 1) / 2.0))) {
    p = 3;
    m = hecke_matrix(basis, p);
    ev = eigenvalues_of(basis, p, m);
  }
  if (has_repeat(ev, std::pow(double(p), (k - 1) / 2.0)))
    throw AccuracyError("Hecke operator has a repeated eigenvalue", 0.0);

  const Real half = Real(k - 1) / 2;
  for (int e = 0; e < d; ++e) {
    const Vec v = eigenvector(m, ev[e]);
    EigenformRecord rec;
    rec.k = k;
    rec.N = N;
    rec.a.assign(static_cast<std::size_t>(N) + 1, 0.0);
    rec.precision_bits = real_bits();
    rec.diagonalized = p == 2 ? HeckeOperator::T2 : HeckeOperator::T3;
    for (int n = 1; n <= N; ++n) {
      Real raw = 0;
      for (int i = 0; i < d; ++i) {
        const mpz_class& b = basis.rows[i][n];
        if (sgn(b) != 0) raw += v(i) * to_real(b);
      }
      raw /= mp::pow(Real(n), half);
      rec.a[n] = static_cast<double>(raw);
    }
    out.push_back(std::move(rec));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.a[2] < y.a[2]; });
  for (int i = 0; i < d; ++i) out[i].index = i;
  return out;
}

// ---------------------------------------------------------------------------

double EigenformRecord::coefficient(Int n) const {
  if (n < 1) throw ParameterError("coefficient index must be >= 1");
  if (n <= N) return a[static_cast<std::size_t>(n)];
  double value = 1.0;
  for (const auto& [prime, e] : arith::factorize(n)) {
    if (prime > N)
      throw ParameterError("a_f(" + std::to_string(n) + ") needs a_f(" + std::to_string(prime) +
                           ") beyond truncation N=" + std::to_string(N));
    const double ap = a[static_cast<std::size_t>(prime)];
    Int pe = prime;
    double prev = 1.0, cur = ap;
    for (int i = 1; i < e; ++i) {
      pe *= prime;
      const double next = pe <= N ? a[static_cast<std::size_t>(pe)] : ap * cur - prev;
      prev = cur;
      cur = next;
    }
    value *= cur;
  }
  return value;
}

double EigenformRecord::raw(Int n) const {
  return coefficient(n) * std::pow(static_cast<double>(n), (k - 1) / 2.0);
}

std::string EigenformRecord::precision_tag() const {
  return precision_bits > 0 ? "mpfr" + std::to_string(precision_bits) : "cache17";
}

// ---------------------------------------------------------------------------

double Gl3Coefficients::operator()(int n, int r) const {
  if (n < 1 || r < 1 || n > n_max || r > r_max) throw ParameterError("GL(3) index out of range");
  return values[static_cast<std::size_t>(n - 1) * r_max + (r - 1)];
}

double gl3_a_n1(const EigenformRecord& f, Int n) {
  if (n < 1) throw ParameterError("GL(3) index must be >= 1");
  double s = 0.0;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % (d * d) != 0) continue;
    const Int t = n / (d * d);
    s += f.coefficient(t * t);
  }
  return s;
}

namespace {
Gl3Coefficients gl3_table(const EigenformRecord& f, int n_max, int r_max);
}  // namespace

double gl3_dirichlet_defect(const EigenformRecord& f, int bound) {
  // Product of zeta(2s) sum a(t^2) t^{-s}, the same in w, and sum mu(d) d^{-s-w}.
  const std::size_t b = static_cast<std::size_t>(bound);
  std::vector<double> brute((b + 1) * (b + 1), 0.0);
  std::vector<double> asq(b + 1, 0.0);
  for (std::size_t t = 1; t <= b; ++t) asq[t] = f.coefficient(static_cast<Int>(t * t));
  for (std::size_t d = 1; d <= b; ++d) {
    const int mu = arith::moebius(static_cast<Int>(d));
    if (mu == 0) continue;
    for (std::size_t i = 1; i * i * d <= b; ++i)
      for (std::size_t t = 1; t * i * i * d <= b; ++t)
        for (std::size_t j = 1; j * j * d <= b; ++j)
          for (std::size_t u = 1; u * j * j * d <= b; ++u)
            brute[(t * i * i * d) * (b + 1) + u * j * j * d] += mu * asq[t] * asq[u];
  }
  const auto gl3 = gl3_table(f, bound, bound);
  double worst = 0.0;
  for (int n = 1; n <= bound; ++n)
    for (int r = 1; r <= bound; ++r)
      worst = std::max(worst, std::abs(gl3(n, r) - brute[static_cast<std::size_t>(n) * (b + 1) + r]));
  return worst;
}

namespace {

Gl3Coefficients gl3_table(const EigenformRecord& f, int n_max, int r_max) {
  const int top = std::max(n_max, r_max);
  std::vector<double> a1(static_cast<std::size_t>(top) + 1, 0.0);
  for (int n = 1; n <= top; ++n) a1[n] = gl3_a_n1(f, n);
  Gl3Coefficients g;
  g.k = f.k;
  g.index = f.index;
  g.n_max = n_max;
  g.r_max = r_max;
  g.values.assign(static_cast<std::size_t>(n_max) * r_max, 0.0);
  for (int n = 1; n <= n_max; ++n)
    for (int r = 1; r <= r_max; ++r) {
      const Int gg = std::gcd(n, r);
      double s = 0.0;
      for (Int d = 1; d <= gg; ++d) {
        if (gg % d != 0) continue;
        const int mu = arith::moebius(d);
        if (mu != 0) s += mu * a1[n / d] * a1[r / d];
      }
      g.values[static_cast<std::size_t>(n - 1) * r_max + (r - 1)] = s;
    }
  return g;
}

}  // namespace

Gl3Coefficients gl3_coefficients(const EigenformRecord& f, int n_max, int r_max) {
  if (n_max < 1 || r_max < 1) throw ParameterError("GL(3) bounds must be >= 1");
  static std::mutex mutex;
  static std::set<std::pair<int, int>> validated;
  bool fresh;
  {
    std::lock_guard lock(mutex);
    fresh = !validated.count({f.k, f.index});
  }
  if (fresh) {
    const double defect = gl3_dirichlet_defect(f, 50);
    if (defect > 1e-9) throw AccuracyError("GL(3) coefficients disagree with the Dirichlet expansion", defect);
    std::lock_guard lock(mutex);
    validated.insert({f.k, f.index});
  }
  return gl3_table(f, n_max, r_max);
}

}  // namespace heckebench::forms
