#include "heckebench/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "heckebench/arith.hpp"
#include "heckebench/besselx.hpp"
#include "heckebench/eigenform_store.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/fit.hpp"
#include "heckebench/fundamental_domain.hpp"
#include "heckebench/lfun.hpp"

namespace heckebench::moments {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIndeterminate = 1e-14;

// int |F|^2, memoized per (k, index, leading coefficients, tol).
double norm2(const EigenformRecord& f, double tol) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double, double, double>, double> memo;
  const auto key = std::make_tuple(f.k, f.index, f.raw(1), f.N >= 2 ? f.raw(2) : 0.0, tol);
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const double v = forms::fundamental_domain_integral(f.k, forms::FdIntegrand::abs2, &f, nullptr, tol)
                       .value.real();
  std::lock_guard lock(mutex);
  return memo.try_emplace(key, v).first->second;
}

double l1_sym2(const EigenformRecord& f) {
  return lfun::l_sym2_at1(f, lfun::Sym2Method::dirichlet).value;
}

int truncation_f(int k) {
  return std::max(lfun::required_truncation_sym2fg(k), lfun::required_truncation_sym2_at1(k));
}

int truncation_g(int k) {
  return std::max({lfun::required_truncation_central_g(k), lfun::required_truncation_sym2fg(k),
                   lfun::required_truncation_sym2_at1(2 * k)});
}

void check_pair(const EigenformRecord& f, const EigenformRecord& g) {
  if (g.k != 2 * f.k) throw DomainError("g must have weight 2k");
}

}  // namespace

forms::EigenformSet moment_forms_f(int k) { return forms::EigenformStore::global().get(k, truncation_f(k)); }
forms::EigenformSet moment_forms_g(int k) { return forms::EigenformStore::global().get(2 * k, truncation_g(k)); }

// ---------------------------------------------------------------------------

WatsonResult watson_check(const EigenformRecord& f, const EigenformRecord& g, double tol) {
  check_pair(f, g);
  WatsonResult r;
  r.k = f.k;
  r.f_index = f.index;
  r.g_index = g.index;
  r.norm2_f = norm2(f, tol);
  r.norm2_g = norm2(g, tol);
  const auto pairing =
      forms::fundamental_domain_integral(2 * f.k, forms::FdIntegrand::conj_pair, &f, &g, tol).value;
  r.lhs = std::norm(pairing) / (r.norm2_f * r.norm2_f * r.norm2_g);
  r.l_half_g = lfun::l_central_g(g).value;
  r.l_half_sym2fg = lfun::l_central_sym2fg(f, g).value;
  r.l1_sym2f = l1_sym2(f);
  r.l1_sym2g = l1_sym2(g);
  r.rhs = kPi * kPi * kPi / (2.0 * (2.0 * f.k - 1.0)) * r.l_half_g * r.l_half_sym2fg /
          (r.l1_sym2f * r.l1_sym2f * r.l1_sym2g);
  r.indeterminate = std::abs(r.rhs) < kIndeterminate;
  r.ratio = r.indeterminate ? NAN : r.lhs / r.rhs;
  return r;
}

MomentReport fourth_moment_spectral(const EigenformRecord& f) {
  if (f.k % 2 != 0) throw DomainError("fourth moment needs even weight");
  const auto gs = moment_forms_g(f.k);
  if (gs->empty()) throw DependencyError("no eigenforms of weight 2k");
  MomentReport rep;
  rep.k = f.k;
  rep.f_index = f.index;
  try {
    rep.l1_sym2f = l1_sym2(f);
    const double pre = kPi * kPi * kPi / (2.0 * (2.0 * f.k - 1.0) * rep.l1_sym2f * rep.l1_sym2f);
    for (const auto& g : *gs) {
      GContribution c;
      c.g_index = g.index;
      c.l_half_g = lfun::l_central_g(g).value;
      c.l_half_sym2fg = lfun::l_central_sym2fg(f, g).value;
      c.l1_sym2g = l1_sym2(g);
      c.value = pre * c.l_half_g * c.l_half_sym2fg / c.l1_sym2g;
      c.negative = c.value < 0.0;
      rep.flagged_negative = rep.flagged_negative || c.negative;
      rep.spectral_total += c.value;
      rep.per_g.push_back(c);
    }
  } catch (const ParameterError& e) {
    throw DependencyError(std::string("missing L-values: ") + e.what());
  }
  return rep;
}

double fourth_moment_direct(const EigenformRecord& f, double tol) {
  const double n2 = norm2(f, tol);
  const double n4 =
      forms::fundamental_domain_integral(2 * f.k, forms::FdIntegrand::abs4, &f, nullptr, tol).value.real();
  return n4 / (n2 * n2);
}

MomentReport fourth_moment_report(const EigenformRecord& f, double tol) {
  auto rep = fourth_moment_spectral(f);
  const double d = fourth_moment_direct(f, tol);
  rep.direct = d;
  rep.abs_discrepancy = std::abs(rep.spectral_total - d);
  rep.rel_discrepancy = rep.abs_discrepancy / std::abs(d);
  return rep;
}

// ---------------------------------------------------------------------------

MainTermResult main_term_check(const EigenformRecord& f) {
  MainTermResult r;
  r.k = f.k;
  r.f_index = f.index;
  r.n_max = lfun::central_g_cutoff(f.k);
  r.nr2_max = lfun::sym2fg_cutoff(f.k);
  const int r_max = static_cast<int>(std::floor(std::sqrt(static_cast<double>(r.nr2_max))));
  const int n_max = static_cast<int>(std::min(r.n_max, r.nr2_max));
  forms::Gl3Coefficients A;
  try {
    A = forms::gl3_coefficients(f, n_max, r_max);
  } catch (const ParameterError& e) {
    throw AccuracyError(std::string("main term: truncation too short: ") + e.what(), 0.0);
  }
  const auto V1 = lfun::afe_table(f.k, 1, n_max);
  const auto V2 = lfun::afe_table(f.k, 2, r.nr2_max);
  double total = 0.0, r1 = 0.0;
  for (int rr = 1; rr <= r_max; ++rr)
    for (long n = 1; n <= n_max && n * rr * rr <= r.nr2_max; ++n) {
      const double term = A(static_cast<int>(n), rr) * (*V1)[n] * (*V2)[n * rr * rr] / (double(n) * rr);
      total += term;
      if (rr == 1) r1 += term;
    }
  r.sum_value = total;
  r.sum_r1_only = r1;
  const double L = l1_sym2(f);
  r.target = 6.0 / (kPi * kPi) * L * L;
  r.defect = std::abs(total - r.target);
  return r;
}

// ---------------------------------------------------------------------------

WindowAverage weight_window_average(const besselx::SmoothWindow& window, bool direct_check) {
  if (window.kind() != besselx::WindowKind::bump01) throw ParameterError("window average needs a bump01 window");
  const double K = window.K(), H = window.H();
  if (K > 40.0) throw ParameterError("window average is capped at K = 40");
  if (!(H > 0.0) || H > K) throw ParameterError("window average needs 0 < H <= K");
  WindowAverage out;
  out.K = K;
  out.H = H;
  const int lo = static_cast<int>(std::floor(K)) + 1;
  const int hi = static_cast<int>(std::ceil(K + H)) - 1;
  double best_w = -1.0;
  int best_k = 0;
  double sum = 0.0;
  for (int k = lo + (lo % 2); k <= hi; k += 2) {
    const double w = window(k);
    if (w == 0.0) continue;
    WindowTerm t;
    t.k = k;
    t.weight = w;
    if (forms::cusp_dimension(k) > 0) {
      const auto fs = moment_forms_f(k);
      double s = 0.0;
      for (const auto& f : *fs) {
        const double v = fourth_moment_spectral(f).spectral_total;
        t.fourth_moments.push_back(v);
        s += v;
      }
      sum += w * 12.0 / k * s;
      if (w > best_w) {
        best_w = w;
        best_k = k;
      }
    }
    out.terms.push_back(std::move(t));
  }
  if (out.terms.empty()) throw DomainError("window contains no even weight");
  out.average = 2.0 / window.integral() * sum;
  out.defect = std::abs(out.average - out.main);
  if (direct_check && best_k > 0) {
    const auto fs = moment_forms_f(best_k);
    double worst = 0.0;
    for (const auto& f : *fs) {
      const double d = fourth_moment_direct(f);
      const double s = fourth_moment_spectral(f).spectral_total;
      worst = std::max(worst, std::abs(s - d) / std::abs(d));
    }
    out.direct_check_k = best_k;
    out.direct_check_rel = worst;
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(E1Mode mode) { return mode == E1Mode::direct ? "direct" : "smoothed"; }

namespace {

struct E1Setup {
  double K, H;
  long r1, r2, A;
  long m_max, c_max;
  std::vector<int> ks;
  besselx::SmoothWindow window;
};

E1Setup e1_setup(const E1Params& p) {
  if (!(p.K > 0.0) || p.K > 60.0) throw ParameterError("error_e1: need 0 < K <= 60");
  const double H = p.H > 0.0 ? p.H : std::pow(p.K, 0.8);
  if (H > p.K) throw ParameterError("error_e1: need H <= K");
  if (!(p.eps > 0.0 && p.eps < 0.5)) throw ParameterError("error_e1: eps must be in (0, 1/2)");
  const long r2 = p.r2 > 0 ? p.r2 : p.r1;
  const double cap = std::pow(p.K, p.param_eps);
  for (long v : {p.r1, r2, p.alpha, p.beta, p.gamma})
    if (v < 1 || static_cast<double>(v) > cap)
      throw ParameterError("error_e1: r1, r2, alpha, beta, gamma must lie in [1, K^param_eps]");
  if (p.gamma_exponent != 2 && p.gamma_exponent != 4)
    throw ParameterError("error_e1: gamma exponent must be 2 or 4");
  E1Setup s{p.K, H, p.r1, r2, p.r1 * p.alpha * p.beta * p.beta,
            static_cast<long>(std::floor(std::pow(p.K, 1.0 + p.eps))),
            static_cast<long>(std::floor(std::pow(p.K, 0.5 + p.eps))), {},
            besselx::SmoothWindow::bump01(p.K, H)};
  const int lo = static_cast<int>(std::floor(p.K)) + 1;
  const int hi = static_cast<int>(std::ceil(p.K + H)) - 1;
  for (int k = lo + (lo % 2); k <= hi; k += 2)
    if (s.window(k) > 0.0) s.ks.push_back(k);
  return s;
}

}  // namespace

E1Result error_e1(const E1Params& p, E1Mode mode) {
  const auto s = e1_setup(p);
  E1Result r;
  r.mode = mode;
  r.K = s.K;
  r.H = s.H;
  r.m_max = s.m_max;
  r.c_max = s.c_max;
  r.even_weights = static_cast<int>(s.ks.size());
  if (s.ks.empty()) return r;
  double total = 0.0;
  if (mode == E1Mode::direct) {
    const double xi2 = static_cast<double>(s.r1) * s.r2 * s.r2 * std::pow(double(p.alpha), 3) *
                       double(p.beta) * p.beta * std::pow(double(p.gamma), p.gamma_exponent);
    for (long c = 1; c <= s.c_max; ++c)
      for (long m = 1; m <= s.m_max; ++m) {
        const double S = arith::kloosterman(s.A, m, c).value;
        if (S == 0.0) continue;
        const double x = 4.0 * kPi * std::sqrt(double(s.A) * m) / c;
        double inner = 0.0;
        for (int k : s.ks) {
          double w = s.window(k);
          if (p.include_weights)
            w *= (k - 1.0) / s.K * lfun::afe_weight(k, 1, double(m)) * lfun::afe_weight(k, 2, xi2);
          inner += w * besselx::bessel_j(2 * k - 1, x);
        }
        total += S / (std::sqrt(double(m) * s.r1) * c) * inner;
      }
    total /= 2.0 * kPi * kPi * s.H;
  } else {
    for (long c = 1; c <= s.c_max; ++c)
      for (long m = 1; m <= s.m_max; ++m) {
        const double t = (4.0 * kPi * std::sqrt(double(s.A) * m) - (2.0 * s.K - 1.0) * c) / (2.0 * s.H * c);
        const double w = besselx::bump(t);
        if (w == 0.0) continue;
        const double S = arith::kloosterman(s.A, m, c).value;
        total += S / (std::sqrt(double(m) * s.r1) * c) * w;
      }
    total /= 8.0 * kPi * kPi * s.H;
  }
  r.value = total;
  return r;
}

E1Budget error_e1_budget(const E1Params& p) {
  const auto s = e1_setup(p);
  E1Budget b;
  if (s.ks.empty()) return b;
  // In the order l = 2k - 1 the window is w((l - (2K - 1))/(2H)).
  const auto G = besselx::SmoothWindow::bump01(2.0 * s.K - 1.0, 2.0 * s.H);
  b.c3 = besselx::window_c3(G);
  for (long c = 1; c <= s.c_max; ++c)
    for (long m = 1; m <= s.m_max; ++m) {
      const double S = std::abs(arith::kloosterman(s.A, m, c).value);
      if (S == 0.0) continue;
      const double x = 4.0 * kPi * std::sqrt(double(s.A) * m) / c;
      const double coef = S / (std::sqrt(double(m) * s.r1) * c);
      b.h_part += coef * std::abs(besselx::parity_h(G, x));
      b.c3_part += coef * besselx::kParityBudgetConstant * x * b.c3;
    }
  const double scale = 1.0 / (8.0 * kPi * kPi * s.H);
  b.h_part *= scale;
  b.c3_part *= scale;
  b.budget = b.h_part + b.c3_part;
  return b;
}

// ---------------------------------------------------------------------------

const char* to_string(Region region) {
  switch (region) {
    case Region::E1: return "E1";
    case Region::E2: return "E2";
    case Region::E3: return "E3";
  }
  return "?";
}

RegionLabel classify_region(const RegionPoint& p, double K, double eps) {
  if (p.n < 1 || p.m < 1 || p.c1 < 1 || p.c2 < 1 || p.r1 < 1 || p.alpha < 1 || p.beta < 1 || p.gamma < 1)
    throw DomainError("region point entries must be >= 1");
  const double X = double(p.n) * p.r1 / p.c2;
  const double Y = std::sqrt(double(p.n) * p.m * p.alpha * p.beta * p.beta) / p.c1;
  const double Ke = std::pow(K, eps);
  RegionLabel out{p, Region::E3};
  if (X > std::pow(K, 2.0 - eps))
    out.label = Region::E1;
  else if (X > std::pow(K, 4.0 / 3.0 - eps) && X / Ke < Y && Y < X * Ke)
    out.label = Region::E2;
  return out;
}

std::vector<RegionRow> region_sweep(double K, double H, const std::vector<RegionPoint>& grid, double eps,
                                    unsigned threads) {
  const auto window = besselx::SmoothWindow::bump01(K, H);
  return fit::parallel_map<RegionRow>(
      grid.size(),
      [&](std::size_t i) {
        const auto& p = grid[i];
        RegionRow row;
        row.label = classify_region(p, K, eps);
        row.K = K;
        row.H = H;
        row.x = 4.0 * kPi * double(p.n) * p.r1 / p.c2;
        row.y = 4.0 * kPi * std::sqrt(double(p.n) * p.m * p.alpha * p.beta * p.beta) / p.c1;
        row.measured = std::abs(besselx::bessel_pair_average({K, H, row.x, row.y, window}));
        const double xy = H / std::sqrt(row.x * row.y);
        switch (row.label.label) {
          case Region::E1:
            row.bound_name = "large_x";
            row.bound = std::pow(K, -1.0 + eps) + H * std::pow(K, -11.0 / 6.0);
            break;
          case Region::E2: {
            row.bound_name = "h_over_sqrt_xy";
            row.bound = xy;
            const double gap = std::abs(4.0 * row.x - row.y);
            if (std::abs(1.0 - row.y / (4.0 * row.x)) > std::pow(K, 2.0 + eps) / (row.x * row.x)) {
              const double q = row.x * row.x / (K * K * gap);
              row.b_power_bound = row.x / K * q;
              row.b_power_bound_2 = row.x / K * q * q;
            }
            break;
          }
          case Region::E3:
            row.bound_name = "min_h_over_sqrt_xy_1";
            row.bound = std::min(xy, 1.0);
            break;
        }
        row.fitted_constant = row.measured / row.bound;
        return row;
      },
      threads);
}

std::vector<RegionPoint> default_region_grid(double K, double eps) {
  std::vector<RegionPoint> grid;
  const double top = std::pow(K, 2.0 - eps);
  const double mid = std::pow(K, 4.0 / 3.0 - eps);
  const double Ke = std::pow(K, eps);
  // E1: n r1 / c2 beyond K^{2-eps}, y from ~x/10 up to the resonance y ~ 4x.
  for (double f : {1.5, 3.0})
    for (long c2 : {1L, 2L}) {
      const long n = static_cast<long>(std::ceil(f * top * c2));
      for (double rho : {0.1, 0.5, 1.0, 2.0})
        grid.push_back({n, std::max(1L, std::lround(rho * rho * n / (c2 * c2))), 1, c2, 1, 1, 1, 1});
    }
  // E2: middle range with y/x inside (K^{-eps}, K^{eps}).
  for (double e : {0.4, 0.6, 0.8}) {
    const double X = mid * std::pow(top / mid, e);
    for (long c1 : {1L, 2L}) {
      const long n = std::lround(X);
      for (double rho : {0.9, 1.0, 1.1}) {
        const double target = rho * X * c1;  // sqrt(n m)/c1 = rho X
        const long m = std::max(1L, std::lround(target * target / n));
        RegionPoint p{n, m, c1, 1, 1, 1, 1, 1};
        const double Y = std::sqrt(double(n) * m) / c1;
        if (Y > X / Ke && Y < X * Ke) grid.push_back(p);
      }
    }
  }
  // E3: n r1 / c2 below K^{4/3-eps} and middle-range points off the diagonal. Both
  // Bessel factors are kept in their oscillatory range (x >= 2K, y >= 3K); below
  // that the pair average is exponentially small and says nothing about the bound.
  for (double xf : {2.0, 4.0, 8.0}) {
    const long n = std::max(1L, std::lround(xf * K / (4.0 * kPi)));
    for (double yf : {3.0, 6.0, 12.0, 24.0}) {
      const double Y = yf * K / (4.0 * kPi);
      grid.push_back({n, std::max(1L, std::lround(Y * Y / n)), 1, 1, 1, 1, 1, 1});
    }
  }
  {
    const long n = std::lround(mid * std::sqrt(top / mid));
    for (double rho : {0.25, 3.0}) grid.push_back({n, std::max(1L, std::lround(rho * rho * n)), 1, 1, 1, 1, 1, 1});
  }
  return grid;
}

}  // namespace heckebench::moments
