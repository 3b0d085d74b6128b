#include "heckebench/lfun.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "heckebench/arith.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/gamma.hpp"
#include "heckebench/petersson.hpp"
#include "heckebench/quadrature.hpp"

namespace heckebench::lfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPanel = 0.25;
constexpr int kOrder = 20;
constexpr double kRatioFloor = 1e-30;
constexpr double kCutoffThreshold = 1e-13;

void fill_nodes(double T, std::vector<double>& t, std::vector<double>& w) {
  const auto& rule = quad::gauss_legendre(kOrder);
  const int panels = static_cast<int>(std::ceil(T / kPanel));
  const double h = T / panels;
  t.clear();
  w.clear();
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < kOrder; ++i) {
      t.push_back(mid + 0.5 * h * rule.nodes[i]);
      w.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

double contour_sum(const std::vector<double>& t, const std::vector<double>& w,
                   const std::vector<std::complex<double>>& lr, double xi) {
  const double lx = std::log(xi);
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::complex<double> s(AfeWeight::kSigma, t[i]);
    sum += w[i] * (std::exp(lr[i] - s * lx) / s).real();
  }
  return sum / kPi;
}

}  // namespace

AfeWeight::AfeWeight(int k, int j, double tol) : k_(k), j_(j), tol_(tol) {
  if (k < 2 || (j != 1 && j != 2)) throw DomainError("AfeWeight: need k >= 2 and j in {1, 2}");
  if (!(tol > 0.0 && tol < 1.0)) throw ParameterError("AfeWeight: tolerance must be in (0, 1)");
  T_ = std::max(30.0, 8.0 * std::sqrt(j * k * std::log(1.0 / tol)));
  // Stop once |Gamma ratio| stays under the floor for a full unit of height.
  T_eff_ = T_;
  double below_since = -1.0;
  for (double t = 0.0; t <= T_; t += kPanel) {
    const double mag = std::exp(log_gamma_ratio(k, j, {kSigma, t}).real());
    if (mag < kRatioFloor) {
      if (below_since < 0.0) below_since = t;
      if (t - below_since >= 1.0) {
        T_eff_ = t;
        break;
      }
    } else {
      below_since = -1.0;
    }
  }
  fill_nodes(T_eff_, t_, w_);
  log_ratio_.reserve(t_.size());
  for (double t : t_) log_ratio_.push_back(log_gamma_ratio(k, j, {kSigma, t}));
  // Discarded contour at xi = 1: |ratio| / |s| summed over [T_eff, T].
  double dropped = 0.0;
  for (double t = T_eff_; t < T_; t += kPanel)
    dropped += kPanel * std::exp(log_gamma_ratio(k, j, {kSigma, t}).real()) / std::hypot(kSigma, t);
  achieved_ = dropped / kPi;
}

double AfeWeight::operator()(double xi) const {
  if (!(xi > 0.0)) throw DomainError("AfeWeight: xi must be positive");
  return contour_sum(t_, w_, log_ratio_, xi);
}

std::complex<double> AfeWeight::evaluate_complex(double xi) const {
  if (!(xi > 0.0)) throw DomainError("AfeWeight: xi must be positive");
  const double lx = std::log(xi);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    const std::complex<double> up(kSigma, t_[i]), down(kSigma, -t_[i]);
    sum += w_[i] * std::exp(log_ratio_[i] - up * lx) / up;
    sum += w_[i] * std::exp(log_gamma_ratio(k_, j_, down) - down * lx) / down;
  }
  return sum / (2.0 * kPi);
}

double AfeWeight::evaluate_with_height(double xi, double T) const {
  if (!(xi > 0.0) || !(T > 0.0)) throw DomainError("AfeWeight: xi and T must be positive");
  std::vector<double> t, w;
  fill_nodes(T, t, w);
  std::vector<std::complex<double>> lr;
  lr.reserve(t.size());
  for (double ti : t) lr.push_back(log_gamma_ratio(k_, j_, {kSigma, ti}));
  return contour_sum(t, w, lr, xi);
}

long AfeWeight::support(double threshold) const {
  // The transition sits near xi ~ k^j / (2 pi)^j; start past it and double.
  long hi = std::max(2L, static_cast<long>(std::pow(k_ / (2.0 * kPi), j_)));
  while (std::abs((*this)(static_cast<double>(hi))) >= threshold) hi *= 2;
  long lo = hi / 2;
  if (std::abs((*this)(static_cast<double>(lo))) < threshold) {
    lo = 1;
    if (std::abs((*this)(1.0)) < threshold) return 1;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (std::abs((*this)(static_cast<double>(mid))) < threshold) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::shared_ptr<const AfeWeight> afe_weight_for(int k, int j) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const AfeWeight>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({k, j});
    if (it != cache.end()) return it->second;
  }
  auto w = std::make_shared<const AfeWeight>(k, j);
  std::lock_guard lock(mutex);
  return cache.try_emplace({k, j}, std::move(w)).first->second;
}

double afe_weight(int k, int j, double xi) { return (*afe_weight_for(k, j))(xi); }

std::shared_ptr<const std::vector<double>> afe_table(int k, int j, long upto) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<double>>> cache;
  std::shared_ptr<const std::vector<double>> have;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({k, j});
    if (it != cache.end()) have = it->second;
  }
  if (have && static_cast<long>(have->size()) > upto) return have;
  const auto weight = afe_weight_for(k, j);
  auto table = std::make_shared<std::vector<double>>(static_cast<std::size_t>(upto) + 1, 0.0);
  const long reuse = have ? static_cast<long>(have->size()) - 1 : 0;
  for (long x = 1; x <= upto; ++x)
    (*table)[x] = x <= reuse ? (*have)[x] : (*weight)(static_cast<double>(x));
  std::lock_guard lock(mutex);
  auto& slot = cache[{k, j}];
  if (!slot || static_cast<long>(slot->size()) < static_cast<long>(table->size())) slot = table;
  return slot;
}

long central_g_cutoff(int k) {
  static std::mutex mutex;
  static std::map<int, long> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
  }
  const long x = afe_weight_for(k, 1)->support(kCutoffThreshold);
  std::lock_guard lock(mutex);
  return memo.try_emplace(k, x).first->second;
}

long sym2fg_cutoff(int k) {
  static std::mutex mutex;
  static std::map<int, long> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
  }
  const long x = afe_weight_for(k, 2)->support(kCutoffThreshold);
  std::lock_guard lock(mutex);
  return memo.try_emplace(k, x).first->second;
}

// Weight-2k records need a_g up to twice the cut-off; the weight-k record needs
// primes up to 2 N_2 for a_f(t^2) with t <= 2 N_2.
int required_truncation_central_g(int k) { return static_cast<int>(2 * central_g_cutoff(k)); }
int required_truncation_sym2fg(int k) { return static_cast<int>(2 * sym2fg_cutoff(k)); }
int required_truncation_sym2_at1(int k) { return 52 * k + 64; }

const char* to_string(LKind kind) {
  switch (kind) {
    case LKind::central_g: return "central_g";
    case LKind::central_sym2fg: return "central_sym2fg";
    case LKind::sym2_at_1: return "sym2_at_1";
  }
  return "?";
}

const char* to_string(Sym2Method method) {
  switch (method) {
    case Sym2Method::dirichlet: return "dirichlet";
    case Sym2Method::mollified: return "mollified";
    case Sym2Method::trace_inversion: return "trace_inversion";
  }
  return "?";
}

// ---------------------------------------------------------------------------

LValueRecord l_central_g(const forms::EigenformRecord& g) {
  if (g.k % 4 != 0) throw DomainError("l_central_g: g must have weight 2k with k even");
  const int k = g.k / 2;
  const long M = central_g_cutoff(k);
  if (g.N < 2 * M)
    throw ParameterError("l_central_g: need a_g(m) for m <= " + std::to_string(2 * M) +
                         " (record has N=" + std::to_string(g.N) + ")");
  const auto V = afe_table(k, 1, 2 * M);
  double s1 = 0.0, s2 = 0.0;
  for (long m = 1; m <= 2 * M; ++m) {
    const double term = g.a[m] / std::sqrt(static_cast<double>(m)) * (*V)[m];
    if (m <= M) s1 += term;
    s2 += term;
  }
  LValueRecord r;
  r.kind = LKind::central_g;
  r.method = "afe";
  r.k_g = g.k;
  r.g_index = g.index;
  r.value = 2.0 * s2;
  r.stability_delta = 2.0 * std::abs(s2 - s1);
  r.truncation = M;
  r.truncation_check = 2 * M;
  r.suspicious = std::abs(r.value) < 1e-6;
  return r;
}

LValueRecord l_central_sym2fg(const forms::EigenformRecord& f, const forms::EigenformRecord& g) {
  if (g.k != 2 * f.k) throw DomainError("l_central_sym2fg: g must have weight 2k");
  const int k = f.k;
  const long N2 = sym2fg_cutoff(k);
  const long X = 2 * N2;
  if (g.N < X)
    throw ParameterError("l_central_sym2fg: need a_g(n) for n <= " + std::to_string(X) +
                         " (record has N=" + std::to_string(g.N) + ")");
  std::vector<double> a1(static_cast<std::size_t>(X) + 1, 0.0);
  try {
    for (long n = 1; n <= X; ++n) a1[n] = forms::gl3_a_n1(f, n);
  } catch (const ParameterError&) {
    throw ParameterError("l_central_sym2fg: need a_f(p) for primes p <= " + std::to_string(X) +
                         " (record has N=" + std::to_string(f.N) + ")");
  }
  // Validates the GL(3) combination rule once per form.
  (void)forms::gl3_coefficients(f, 1, 1);
  const auto V = afe_table(k, 2, X);
  std::vector<int> mu(static_cast<std::size_t>(X) + 1, 0);
  for (long d = 1; d <= X; ++d) mu[d] = arith::moebius(d);

  double s1 = 0.0, s2 = 0.0;
  for (long r = 1; r * r <= X; ++r) {
    for (long n = 1; n * r * r <= X; ++n) {
      const long g_nr = std::gcd(n, r);
      double A = 0.0;
      for (long d = 1; d <= g_nr; ++d)
        if (g_nr % d == 0 && mu[d] != 0) A += mu[d] * a1[n / d] * a1[r / d];
      const long xi = n * r * r;
      const double term = A * g.a[n] / (std::sqrt(static_cast<double>(n)) * r) * (*V)[xi];
      if (xi <= N2) s1 += term;
      s2 += term;
    }
  }
  LValueRecord out;
  out.kind = LKind::central_sym2fg;
  out.method = "afe";
  out.k_f = f.k;
  out.f_index = f.index;
  out.k_g = g.k;
  out.g_index = g.index;
  out.value = 2.0 * s2;
  out.stability_delta = 2.0 * std::abs(s2 - s1);
  out.truncation = N2;
  out.truncation_check = X;
  out.suspicious = std::abs(out.value) < 1e-6;
  return out;
}

double mollified_inverse(const forms::EigenformRecord& f, double delta) {
  if (!(delta > 0.0 && delta < 0.1)) throw DomainError("mollifier exponent must be in (0, 1/10)");
  const double scale = std::pow(static_cast<double>(f.k), delta);
  const long bound = static_cast<long>(std::ceil(45.0 * scale));
  double s = 0.0;
  for (long d3 = 1; d3 * d3 * d3 <= bound; ++d3)
    for (long d2 = 1; d2 * d2 * d3 * d3 * d3 <= bound; ++d2)
      for (long d1 = 1; d1 * d2 * d2 * d3 * d3 * d3 <= bound; ++d1) {
        const int mu = arith::moebius(d1 * d2 * d3);
        if (mu == 0) continue;
        const long q = d1 * d2 * d2 * d3 * d3 * d3;
        s += mu * arith::moebius(d2) * f.coefficient((d1 * d2) * (d1 * d2)) /
             static_cast<double>(q) * std::exp(-q / scale);
      }
  return s;
}

namespace {

double smoothed_sym2(const std::vector<double>& a1, double N) {
  const long top = std::min(static_cast<long>(a1.size()) - 1, static_cast<long>(6.5 * N));
  double s = 0.0;
  for (long n = top; n >= 1; --n) {
    const double u = n / N;
    s += a1[n] / n * std::exp(-u * u);
  }
  return s;
}

}  // namespace

LValueRecord l_sym2_at1(const forms::EigenformRecord& f, Sym2Method method, const Sym2Options& options) {
  LValueRecord r;
  r.kind = LKind::sym2_at_1;
  r.method = to_string(method);
  r.k_f = f.k;
  r.f_index = f.index;
  switch (method) {
    case Sym2Method::dirichlet: {
      const long N = 8L * f.k;
      const long top = static_cast<long>(6.5 * N);
      std::vector<double> a1(static_cast<std::size_t>(top) + 1, 0.0);
      try {
        for (long n = 1; n <= top; ++n) a1[n] = forms::gl3_a_n1(f, n);
      } catch (const ParameterError&) {
        throw ParameterError("l_sym2_at1: need a_f(p) for primes p <= " + std::to_string(top) +
                             " (record has N=" + std::to_string(f.N) + ")");
      }
      r.value = smoothed_sym2(a1, static_cast<double>(N));
      r.stability_delta = std::abs(r.value - smoothed_sym2(a1, static_cast<double>(N / 2)));
      r.truncation = N;
      r.truncation_check = N / 2;
      break;
    }
    case Sym2Method::mollified: {
      const double inv = mollified_inverse(f, options.delta);
      r.value = 1.0 / inv;
      r.stability_delta = 0.0;
      r.truncation = static_cast<long>(std::ceil(45.0 * std::pow(f.k, options.delta)));
      r.truncation_check = r.truncation;
      break;
    }
    case Sym2Method::trace_inversion: {
      if (forms::cusp_dimension(f.k) != 1) throw DomainError("trace_inversion needs dim S_k = 1");
      const auto rhs = forms::petersson_rhs(f.k, 1, 1, options.c_max);
      r.value = 2.0 * kPi * kPi / (f.k - 1.0) / rhs.value;
      const auto half = forms::petersson_rhs(f.k, 1, 1, std::max(1, options.c_max / 2));
      r.stability_delta = std::abs(r.value - 2.0 * kPi * kPi / (f.k - 1.0) / half.value);
      r.truncation = options.c_max;
      r.truncation_check = std::max(1, options.c_max / 2);
      break;
    }
  }
  return r;
}

std::string lvalue_csv_header() {
  return "kind,method,k_f,f_index,k_g,g_index,value,stability_delta,truncation,truncation_check,suspicious";
}

std::string lvalue_csv_row(const LValueRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%d,%d,%.17g,%.6e,%ld,%ld,%d", to_string(r.kind),
                r.method.c_str(), r.k_f, r.f_index, r.k_g, r.g_index, r.value, r.stability_delta,
                r.truncation, r.truncation_check, r.suspicious ? 1 : 0);
  return buf;
}

}  // namespace heckebench::lfun
