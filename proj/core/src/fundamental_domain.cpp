#include "heckebench/fundamental_domain.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "heckebench/arith.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/quadrature.hpp"

namespace heckebench::forms {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 20;

double log_term(int k, double n, double y) {
  return 0.5 * (k - 1) * std::log(n) - 2.0 * kPi * n * y + 0.5 * k * std::log(y);
}

// Real coefficients c_n(y) with F(x + iy) = sum c_n e(n x).
std::vector<double> coefficients_at(const EigenformRecord& f, double y, double rel_tol) {
  const int n_max = fd_terms_needed(f.k, y, rel_tol);
  if (n_max > f.N)
    throw AccuracyError("fundamental domain: need a_f(n) up to n=" + std::to_string(n_max) +
                            " but N=" + std::to_string(f.N),
                        rel_tol);
  std::vector<double> c(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) c[n] = f.a[n] * std::exp(log_term(f.k, n, y));
  return c;
}

std::complex<double> evaluate(const std::vector<double>& c, double x) {
  const std::complex<double> step = std::polar(1.0, 2.0 * kPi * x);
  std::complex<double> z = step, sum = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    sum += c[n] * z;
    z *= step;
  }
  return sum;
}

struct Integrand {
  FdIntegrand kind;
  const EigenformRecord* f;
  const EigenformRecord* g;
  double rel_tol;

  // Values at every x for one y.
  void at_height(double y, const std::vector<double>& xs, std::vector<std::complex<double>>& out) const {
    out.assign(xs.size(), 0.0);
    if (kind == FdIntegrand::one) {
      for (auto& v : out) v = 1.0;
      return;
    }
    const auto cf = coefficients_at(*f, y, rel_tol);
    std::vector<double> cg;
    if (kind == FdIntegrand::conj_pair) cg = coefficients_at(*g, y, rel_tol);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::complex<double> F = evaluate(cf, xs[i]);
      switch (kind) {
        case FdIntegrand::abs2: out[i] = std::norm(F); break;
        case FdIntegrand::abs4: out[i] = std::norm(F) * std::norm(F); break;
        case FdIntegrand::conj_pair: out[i] = F * F * std::conj(evaluate(cg, xs[i])); break;
        case FdIntegrand::one: break;
      }
    }
  }

  int max_frequency(double y) const {
    if (kind == FdIntegrand::one) return 0;
    const int nf = fd_terms_needed(f->k, y, rel_tol);
    if (kind == FdIntegrand::abs2) return nf;
    if (kind == FdIntegrand::abs4) return 2 * nf;
    return 2 * nf + fd_terms_needed(g->k, y, rel_tol);
  }
};

std::complex<double> corner_integral(const Integrand& I, int x_panels, int t_panels) {
  const auto& rule = quad::gauss_legendre(kOrder);
  std::vector<double> xs, xw;
  const double hx = 1.0 / x_panels;
  for (int p = 0; p < x_panels; ++p)
    for (int i = 0; i < kOrder; ++i) {
      xs.push_back(-0.5 + (p + 0.5) * hx + 0.5 * hx * rule.nodes[i]);
      xw.push_back(0.5 * hx * rule.weights[i]);
    }
  const double ht = 1.0 / t_panels;
  std::complex<double> total = 0.0;
  std::vector<std::complex<double>> vals;
  // The lower boundary depends on x, so evaluate point by point.
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    const double s0 = std::sqrt(1.0 - xs[ix] * xs[ix]);
    const double span = 1.0 - s0;
    std::complex<double> inner = 0.0;
    for (int p = 0; p < t_panels; ++p)
      for (int i = 0; i < kOrder; ++i) {
        const double t = (p + 0.5) * ht + 0.5 * ht * rule.nodes[i];
        const double y = s0 + t * span;
        I.at_height(y, {xs[ix]}, vals);
        inner += 0.5 * ht * rule.weights[i] * vals[0] / (y * y);
      }
    total += xw[ix] * span * inner;
  }
  return total;
}

std::complex<double> strip_integral(const Integrand& I, int u_panels) {
  const auto& rule = quad::gauss_legendre(kOrder);
  const double hu = 1.0 / u_panels;
  std::complex<double> total = 0.0;
  std::vector<std::complex<double>> vals;
  std::vector<double> xs;
  for (int p = 0; p < u_panels; ++p)
    for (int i = 0; i < kOrder; ++i) {
      const double u = (p + 0.5) * hu + 0.5 * hu * rule.nodes[i];
      const double y = 1.0 / u;
      const int M = 2 * I.max_frequency(y) + 16;
      xs.resize(M);
      for (int j = 0; j < M; ++j) xs[j] = -0.5 + static_cast<double>(j) / M;
      I.at_height(y, xs, vals);
      std::complex<double> row = 0.0;
      for (const auto& v : vals) row += v;
      total += 0.5 * hu * rule.weights[i] * row / static_cast<double>(M);
    }
  return total;
}

}  // namespace

const char* to_string(FdIntegrand kind) {
  switch (kind) {
    case FdIntegrand::one: return "one";
    case FdIntegrand::abs2: return "abs2";
    case FdIntegrand::abs4: return "abs4";
    case FdIntegrand::conj_pair: return "conj_pair";
  }
  return "?";
}

int fd_terms_needed(int k, double y, double rel_tol) {
  // Largest term sits near n* = (k-1)/(4 pi y); continue until the Deligne-weighted
  // tail, dominated by a geometric series past n*, is below rel_tol * max term.
  const double peak_n = std::max(1.0, (k - 1) / (4.0 * kPi * y));
  const double peak = log_term(k, std::floor(peak_n) < 1 ? 1.0 : std::floor(peak_n), y);
  const double peak2 = log_term(k, std::ceil(peak_n), y);
  const double top = std::max(peak, peak2);
  const double cut = std::log(rel_tol);
  int n = static_cast<int>(std::ceil(peak_n));
  while (true) {
    const double lt = log_term(k, n, y);
    // tail ratio e^{-2 pi y} per step at most once past the peak
    const double ratio = std::exp(-2.0 * kPi * y) * std::pow((n + 1.0) / n, 0.5 * (k - 1));
    if (ratio < 1.0) {
      const double tail = lt + std::log(static_cast<double>(arith::tau(n)) + 2.0 * std::sqrt(n)) -
                          std::log1p(-ratio);
      if (tail - top < cut) return n;
    }
    ++n;
    if (n > 100000) throw AccuracyError("fundamental domain: q-expansion does not converge", rel_tol);
  }
}

FdResult fundamental_domain_integral(int k_total, FdIntegrand kind, const EigenformRecord* f,
                                     const EigenformRecord* g, double tol) {
  if (!(tol > 0.0)) throw ParameterError("fundamental domain: tol must be positive");
  if (kind != FdIntegrand::one && !f) throw ParameterError("fundamental domain: missing f");
  if (kind == FdIntegrand::conj_pair && !g) throw ParameterError("fundamental domain: missing g");
  switch (kind) {
    case FdIntegrand::one: break;
    case FdIntegrand::abs2:
      if (k_total != f->k) throw ParameterError("abs2 integrand has weight k");
      break;
    case FdIntegrand::abs4:
      if (k_total != 2 * f->k) throw ParameterError("abs4 integrand has weight 2k");
      break;
    case FdIntegrand::conj_pair:
      if (k_total != 2 * f->k || g->k != 2 * f->k) throw ParameterError("conj_pair needs g of weight 2k");
      break;
  }
  const Integrand I{kind, f, g, 1e-2 * tol};
  FdResult r;
  int xp = 2, tp = 1, up = 4;
  std::complex<double> prev_c = corner_integral(I, xp, tp), prev_s = strip_integral(I, up);
  for (int level = 1; level <= 6; ++level) {
    xp *= 2;
    tp *= 2;
    up *= 2;
    const auto c = corner_integral(I, xp, tp);
    const auto s = strip_integral(I, up);
    const auto total = c + s;
    const double change = std::abs(total - (prev_c + prev_s)) / std::max(std::abs(total), 1e-300);
    r.corner = c;
    r.strip = s;
    r.value = total;
    r.change = change;
    r.levels = level;
    if (change <= tol) return r;
    prev_c = c;
    prev_s = s;
  }
  throw AccuracyError("fundamental domain quadrature did not reach the requested tolerance", r.change);
}

}  // namespace heckebench::forms
