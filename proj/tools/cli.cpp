#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "heckebench/arith.hpp"
#include "heckebench/besselx.hpp"
#include "heckebench/eigenform_store.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/fit.hpp"
#include "heckebench/forms.hpp"
#include "heckebench/lfun.hpp"
#include "heckebench/moments.hpp"
#include "heckebench/petersson.hpp"

#ifndef HECKEBENCH_VERSION
#define HECKEBENCH_VERSION "0.0.0"
#endif

namespace heckebench::cli {

using json = nlohmann::ordered_json;

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

forms::EigenformSet eigenforms(const RunConfig& cfg, int k, int min_N = 0) {
  return forms::EigenformStore::global().get(k, std::max(min_N, cfg.truncation));
}

std::vector<int> weights_or(const RunConfig& cfg, std::vector<int> fallback) {
  return cfg.weights.empty() ? fallback : cfg.weights;
}

// max |a(m)a(n) - sum_{d|(m,n)} a(mn/d^2)| over nm <= bound, and Deligne violations.
struct HeckeStats {
  double relation = 0.0;
  int deligne_violations = 0;
};

HeckeStats hecke_stats(const forms::EigenformRecord& f, int bound, double tol) {
  HeckeStats s;
  for (long n = 1; n <= bound; ++n) {
    if (std::abs(f.coefficient(n)) > static_cast<double>(arith::tau(n)) + tol) ++s.deligne_violations;
    for (long m = 1; n * m <= bound; ++m) {
      const long g = std::gcd(n, m);
      double rhs = 0.0;
      for (long d = 1; d <= g; ++d)
        if (g % d == 0) rhs += f.coefficient(n * m / (d * d));
      s.relation = std::max(s.relation, std::abs(f.coefficient(n) * f.coefficient(m) - rhs));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

Report cmd_forms(const RunConfig& cfg) {
  Report r;
  double worst = 0.0;
  int violations = 0;
  for (int k : weights_or(cfg, {12})) {
    const auto set = eigenforms(cfg, k);
    for (const auto& f : *set) {
      const auto st = hecke_stats(f, 200, 1e-9);
      worst = std::max(worst, st.relation);
      violations += st.deligne_violations;
      json row{{"k", k}, {"index", f.index}, {"N", f.N}, {"diagonalized", forms::to_string(f.diagonalized)},
               {"hecke_relation_max", num(st.relation)}, {"deligne_violations", st.deligne_violations}};
      for (int n = 1; n <= cfg.nmax; ++n) row["a" + std::to_string(n)] = num(f.coefficient(n));
      r.rows.push_back(row);
    }
  }
  r.check("hecke_relations_nm_le_200", worst <= 1e-9, worst, 1e-9);
  r.check("deligne_violations", violations == 0, violations, 0);
  return r;
}

Report cmd_kloosterman(const RunConfig& cfg) {
  Report r;
  const auto v = arith::kloosterman(cfg.n, cfg.m, cfg.c);
  const double direct = arith::kloosterman_direct(cfg.n, cfg.m, cfg.c);
  r.rows.push_back({{"n", cfg.n}, {"m", cfg.m}, {"c", cfg.c}, {"value", num(v.value)}, {"weil_bound", num(v.weil)},
                    {"direct", num(direct)}});
  r.check("weil_bound", std::abs(v.value) <= v.weil + 1e-9, std::abs(v.value), v.weil);
  r.check("direct_agreement", std::abs(v.value - direct) <= 1e-8 * cfg.c, std::abs(v.value - direct), 1e-8 * cfg.c);
  return r;
}

besselx::BesselMethod parse_bessel_method(const std::string& s) {
  if (s == "automatic") return besselx::BesselMethod::automatic;
  if (s == "power_series") return besselx::BesselMethod::power_series;
  if (s == "quadrature") return besselx::BesselMethod::quadrature;
  if (s == "asymptotic") return besselx::BesselMethod::asymptotic;
  throw ConfigError("unknown Bessel method: " + s);
}

const char* to_string(besselx::BesselMethod m) {
  switch (m) {
    case besselx::BesselMethod::automatic: return "automatic";
    case besselx::BesselMethod::power_series: return "power_series";
    case besselx::BesselMethod::quadrature: return "quadrature";
    case besselx::BesselMethod::asymptotic: return "asymptotic";
  }
  return "?";
}

Report cmd_bessel(const RunConfig& cfg) {
  Report r;
  const auto method = parse_bessel_method(cfg.bessel_method);
  const double v = besselx::bessel_j(cfg.l, cfg.x, method);
  r.rows.push_back({{"l", cfg.l}, {"x", cfg.x}, {"method", to_string(method)},
                    {"regime", to_string(besselx::bessel_regime(cfg.l, cfg.x))}, {"value", num(v)}});
  r.check("bounded_by_one", std::isfinite(v) && std::abs(v) <= 1.0, std::abs(v), 1.0);
  return r;
}

json lvalue_row(const lfun::LValueRecord& v) {
  return {{"kind", lfun::to_string(v.kind)}, {"method", v.method},        {"k_f", v.k_f},
          {"f_index", v.f_index},            {"k_g", v.k_g},              {"g_index", v.g_index},
          {"value", num(v.value)},           {"stability_delta", num(v.stability_delta)},
          {"truncation", v.truncation},      {"truncation_check", v.truncation_check},
          {"suspicious", v.suspicious}};
}

lfun::Sym2Method parse_sym2(const std::string& s) {
  if (s == "dirichlet") return lfun::Sym2Method::dirichlet;
  if (s == "mollified") return lfun::Sym2Method::mollified;
  if (s == "trace_inversion") return lfun::Sym2Method::trace_inversion;
  throw ConfigError("unknown L(1, sym^2 f) method: " + s);
}

Report cmd_lvalue(const RunConfig& cfg) {
  Report r;
  double worst = 0.0;
  bool stability_checked = false;
  for (int k : weights_or(cfg, {12})) {
    if (cfg.lkind == "central_g") {
      for (const auto& g : *moments::moment_forms_g(k)) {
        const auto v = lfun::l_central_g(g);
        worst = std::max(worst, v.stability_delta / std::max(1.0, std::abs(v.value)));
        stability_checked = true;
        r.rows.push_back(lvalue_row(v));
      }
    } else if (cfg.lkind == "sym2fg") {
      const auto fs = moments::moment_forms_f(k);
      const auto gs = moments::moment_forms_g(k);
      for (const auto& f : *fs)
        for (const auto& g : *gs) {
          const auto v = lfun::l_central_sym2fg(f, g);
          worst = std::max(worst, v.stability_delta / std::max(1.0, std::abs(v.value)));
          stability_checked = true;
          r.rows.push_back(lvalue_row(v));
        }
    } else if (cfg.lkind == "sym2_at1") {
      const auto method = parse_sym2(cfg.sym2_method);
      for (const auto& f : *moments::moment_forms_f(k)) {
        const auto v = lfun::l_sym2_at1(f, method);
        if (method == lfun::Sym2Method::dirichlet) {
          worst = std::max(worst, v.stability_delta / std::max(1.0, std::abs(v.value)));
          stability_checked = true;
        }
        r.rows.push_back(lvalue_row(v));
      }
    } else {
      throw ConfigError("unknown L-value kind: " + cfg.lkind);
    }
  }
  if (stability_checked) r.check("truncation_stability", worst <= 1e-6, worst, 1e-6);
  return r;
}

Report cmd_petersson(const RunConfig& cfg) {
  Report r;
  const auto ks = weights_or(cfg, {12});
  const auto per_k = fit::parallel_map<std::vector<json>>(
      ks.size(),
      [&](std::size_t i) {
        const int k = ks[i];
        const auto set = forms::EigenformStore::global().get(k, lfun::required_truncation_sym2_at1(k));
        std::vector<double> l1;
        for (const auto& f : *set) l1.push_back(lfun::l_sym2_at1(f, lfun::Sym2Method::dirichlet).value);
        std::vector<json> rows;
        for (int n = 1; n <= cfg.nmax; ++n)
          for (int m = 1; m <= cfg.nmax; ++m) {
            const auto s = forms::petersson_sides(*set, l1, k, n, m, cfg.cmax);
            rows.push_back({{"k", k}, {"n", n}, {"m", m}, {"dimension", s.dimension}, {"lhs", num(s.lhs)},
                            {"rhs", num(s.rhs)}, {"defect", num(std::abs(s.lhs - s.rhs))},
                            {"tail_bound", num(s.tail_bound)}, {"accuracy_warning", s.accuracy_warning}});
          }
        return rows;
      },
      cfg.threads);
  double max_defect = 0.0, max_excess = -INFINITY;
  for (const auto& rows : per_k)
    for (const auto& row : rows) {
      const double d = row["defect"].get<double>();
      max_defect = std::max(max_defect, d);
      max_excess = std::max(max_excess, d - row["tail_bound"].get<double>());
      r.rows.push_back(row);
    }
  r.extra["max_defect"] = num(max_defect);
  r.check("two_sided_identity", max_excess <= 1e-8, max_excess, 1e-8);
  return r;
}

Report cmd_watson(const RunConfig& cfg) {
  Report r;
  double worst = 0.0, worst_sum = 0.0;
  int indeterminate = 0;
  for (int k : weights_or(cfg, {12})) {
    const auto fs = moments::moment_forms_f(k);
    const auto gs = moments::moment_forms_g(k);
    for (const auto& f : *fs) {
      double sum = 0.0;
      for (const auto& g : *gs) {
        const auto w = moments::watson_check(f, g, cfg.tol);
        sum += w.lhs;
        if (w.indeterminate)
          ++indeterminate;
        else
          worst = std::max(worst, std::abs(w.ratio - 1.0));
        r.rows.push_back({{"k", k}, {"f_index", f.index}, {"g_index", g.index}, {"lhs", num(w.lhs)},
                          {"rhs", num(w.rhs)}, {"ratio", num(w.ratio)}, {"indeterminate", w.indeterminate},
                          {"l_half_g", num(w.l_half_g)}, {"l_half_sym2fg", num(w.l_half_sym2fg)},
                          {"l1_sym2f", num(w.l1_sym2f)}, {"l1_sym2g", num(w.l1_sym2g)}});
      }
      const double direct = moments::fourth_moment_direct(f, cfg.tol);
      worst_sum = std::max(worst_sum, std::abs(sum - direct) / direct);
    }
  }
  r.extra["indeterminate"] = indeterminate;
  r.check("watson_ratio", worst <= 1e-3, worst, 1e-3);
  r.check("sum_lhs_vs_direct_fourth_moment", worst_sum <= 1e-3, worst_sum, 1e-3);
  return r;
}

json moment_row(const moments::MomentReport& m) {
  json row{{"k", m.k}, {"f_index", m.f_index}, {"l1_sym2f", num(m.l1_sym2f)},
           {"spectral_total", num(m.spectral_total)}, {"direct", m.direct ? num(*m.direct) : json(nullptr)},
           {"main_term", num(m.main_term)}, {"abs_discrepancy", num(m.abs_discrepancy)},
           {"rel_discrepancy", num(m.rel_discrepancy)}, {"flagged_negative", m.flagged_negative},
           {"normalization", m.normalization}};
  return row;
}

Report cmd_fourth_moment(const RunConfig& cfg) {
  Report r;
  double min_contribution = INFINITY, worst_rel = 0.0;
  json per_g = json::array();
  for (int k : weights_or(cfg, {12})) {
    for (const auto& f : *moments::moment_forms_f(k)) {
      const auto m = cfg.direct ? moments::fourth_moment_report(f, cfg.tol) : moments::fourth_moment_spectral(f);
      for (const auto& c : m.per_g) {
        min_contribution = std::min(min_contribution, c.value);
        per_g.push_back({{"k", k}, {"f_index", f.index}, {"g_index", c.g_index}, {"value", num(c.value)},
                         {"l_half_g", num(c.l_half_g)}, {"l_half_sym2fg", num(c.l_half_sym2fg)},
                         {"l1_sym2g", num(c.l1_sym2g)}});
      }
      if (cfg.direct) worst_rel = std::max(worst_rel, m.rel_discrepancy);
      r.rows.push_back(moment_row(m));
    }
  }
  r.extra["per_g"] = per_g;
  r.check("contributions_nonnegative", min_contribution >= -1e-10, min_contribution, -1e-10);
  if (cfg.direct) r.check("spectral_vs_direct", worst_rel <= 1e-3, worst_rel, 1e-3);
  return r;
}

Report cmd_window(const RunConfig& cfg) {
  Report r;
  if (!cfg.K || !cfg.H) throw ConfigError("window-average needs --K and --H");
  const auto w = moments::weight_window_average(besselx::SmoothWindow::bump01(*cfg.K, *cfg.H), cfg.direct);
  for (const auto& t : w.terms) {
    json fm = json::array();
    for (double v : t.fourth_moments) fm.push_back(num(v));
    r.rows.push_back({{"k", t.k}, {"weight", num(t.weight)}, {"fourth_moments", fm}});
  }
  r.extra["average"] = num(w.average);
  r.extra["main"] = num(w.main);
  r.extra["defect"] = num(w.defect);
  if (w.direct_check_k) {
    r.extra["direct_check_k"] = *w.direct_check_k;
    r.extra["direct_check_rel"] = num(*w.direct_check_rel);
    r.check("spectral_vs_direct", *w.direct_check_rel <= 1e-3, *w.direct_check_rel, 1e-3);
  }
  r.check("average_finite_positive", std::isfinite(w.average) && w.average > 0.0, w.average, 0.0);
  return r;
}

Report cmd_error_sweep(const RunConfig& cfg) {
  Report r;
  std::vector<double> Ks = cfg.Ks;
  if (Ks.empty()) Ks = {40.0, 60.0};
  json e1 = json::array(), fits = json::array();
  bool e1_ok = true;
  double worst_spread = 0.0;
  for (double K : Ks) {
    const double H = cfg.H ? *cfg.H : std::pow(K, 0.8);
    moments::E1Params p;
    p.K = K;
    p.H = H;
    p.eps = cfg.eps;
    const auto d = moments::error_e1(p, moments::E1Mode::direct);
    const auto s = moments::error_e1(p, moments::E1Mode::smoothed);
    const auto b = moments::error_e1_budget(p);
    const double diff = std::abs(d.value - s.value);
    e1_ok = e1_ok && diff <= b.budget;
    e1.push_back({{"K", K}, {"H", H}, {"m_max", d.m_max}, {"c_max", d.c_max}, {"direct", num(d.value.real())},
                  {"smoothed", num(s.value.real())}, {"difference", num(diff)}, {"budget", num(b.budget)},
                  {"budget_h", num(b.h_part)}, {"budget_c3", num(b.c3_part)}, {"c3", num(b.c3)},
                  {"bound_K34eps_over_H", num(std::pow(K, 0.75 + cfg.eps) / H)}});
    const auto rows = moments::region_sweep(K, H, moments::default_region_grid(K, cfg.eps), cfg.eps, cfg.threads);
    std::map<std::string, std::vector<double>> ratios;
    for (const auto& row : rows) {
      ratios[row.bound_name].push_back(row.fitted_constant);
      const auto& p2 = row.label.point;
      r.rows.push_back({{"K", K}, {"H", H}, {"label", moments::to_string(row.label.label)}, {"n", p2.n}, {"m", p2.m},
                        {"c1", p2.c1}, {"c2", p2.c2}, {"r1", p2.r1}, {"alpha", p2.alpha}, {"beta", p2.beta},
                        {"gamma", p2.gamma}, {"x", num(row.x)}, {"y", num(row.y)}, {"measured", num(row.measured)},
                        {"bound_name", row.bound_name}, {"bound", num(row.bound)},
                        {"fitted_constant", num(row.fitted_constant)},
                        {"b_power_bound", row.b_power_bound ? num(*row.b_power_bound) : json(nullptr)},
                        {"b_power_bound_2", row.b_power_bound_2 ? num(*row.b_power_bound_2) : json(nullptr)}});
    }
    for (const auto& [name, v] : ratios) {
      const double med = fit::median(v);
      const double mx = *std::max_element(v.begin(), v.end());
      worst_spread = std::max(worst_spread, mx / med);
      fits.push_back({{"K", K}, {"bound_name", name}, {"points", v.size()}, {"fitted_constant", num(mx)},
                      {"median", num(med)}, {"max_over_median", num(mx / med)}});
    }
  }
  r.extra["e1"] = e1;
  r.extra["fits"] = fits;
  r.check("e1_direct_vs_smoothed", e1_ok, 0.0, 0.0);
  r.check("region_constant_spread", worst_spread <= 10.0, worst_spread, 10.0);
  return r;
}

Report cmd_verify_all(const RunConfig& cfg) {
  Report r;
  const int W = cfg.max_weight;
  auto row = [&](const std::string& name, bool ok, double metric, double threshold) {
    r.check(name, ok, metric, threshold);
    r.rows.push_back({{"check", name}, {"passed", ok}, {"metric", num(metric)}, {"threshold", num(threshold)}});
  };

  // Kloosterman: fixed-seed triples.
  {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> cd(1, 2000), nd(1, 100000);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      const long c = cd(rng), n = nd(rng), m = nd(rng);
      const auto v = arith::kloosterman(n, m, c);
      if (std::abs(v.value) > v.weil + 1e-9) ++bad;
      if (std::abs(v.value - arith::kloosterman_multiplicative(n, m, c)) > 1e-8 * c) ++bad;
      if (std::abs(v.value - arith::kloosterman(m, n, c).value) > 1e-8 * c) ++bad;
    }
    row("kloosterman_weil_symmetry_multiplicativity", bad == 0, bad, 0);
  }
  // Hecke relations and Deligne bound.
  {
    double worst = 0.0;
    int violations = 0;
    for (int k = 12; k <= W; k += 2) {
      if (forms::cusp_dimension(k) == 0) continue;
      for (const auto& f : *eigenforms(cfg, k)) {
        const auto st = hecke_stats(f, 200, 1e-9);
        worst = std::max(worst, st.relation);
        violations += st.deligne_violations;
      }
    }
    row("hecke_relations", worst <= 1e-9, worst, 1e-9);
    row("deligne_bound", violations == 0, violations, 0);
  }
  // Petersson.
  {
    double worst = -INFINITY;
    for (int k = 4; k <= W; k += 2) {
      const auto set = forms::EigenformStore::global().get(k, lfun::required_truncation_sym2_at1(k));
      std::vector<double> l1;
      for (const auto& f : *set) l1.push_back(lfun::l_sym2_at1(f, lfun::Sym2Method::dirichlet).value);
      for (int n = 1; n <= cfg.nmax; ++n)
        for (int m = 1; m <= cfg.nmax; ++m) {
          const auto s = forms::petersson_sides(*set, l1, k, n, m, cfg.cmax);
          worst = std::max(worst, std::abs(s.lhs - s.rhs) - s.tail_bound);
        }
    }
    row("petersson_two_sided", worst <= 1e-8, worst, 1e-8);
  }
  // L(1, sym^2 f): dirichlet vs trace inversion on one-dimensional spaces.
  {
    double worst = 0.0;
    for (int k = 12; k <= W; k += 2) {
      if (forms::cusp_dimension(k) != 1) continue;
      const auto& f = eigenforms(cfg, k, lfun::required_truncation_sym2_at1(k))->front();
      const double a = lfun::l_sym2_at1(f, lfun::Sym2Method::dirichlet).value;
      const double b = lfun::l_sym2_at1(f, lfun::Sym2Method::trace_inversion).value;
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    row("sym2_dirichlet_vs_trace_inversion", worst <= 1e-6, worst, 1e-6);
  }
  // AFE weights near zero.
  {
    double worst = 0.0;
    for (int k : {12, 24})
      if (k <= W)
        for (int j : {1, 2}) worst = std::max(worst, std::abs(lfun::afe_weight(k, j, 1e-8) - 1.0));
    row("afe_weight_at_zero", worst <= 1e-4, worst, 1e-4);
  }
  // Watson and fourth moments.
  if (W >= 12) {
    double worst = 0.0;
    const auto& f = moments::moment_forms_f(12)->front();
    for (const auto& g : *moments::moment_forms_g(12)) {
      const auto w = moments::watson_check(f, g, cfg.tol);
      worst = std::max(worst, w.indeterminate ? 0.0 : std::abs(w.ratio - 1.0));
    }
    row("watson_k12", worst <= 1e-3, worst, 1e-3);
  }
  for (int k : {12, 16}) {
    if (k > W) continue;
    double worst = 0.0;
    for (const auto& f : *moments::moment_forms_f(k))
      worst = std::max(worst, moments::fourth_moment_report(f, cfg.tol).rel_discrepancy);
    row("fourth_moment_spectral_vs_direct_k" + std::to_string(k), worst <= 1e-3, worst, 1e-3);
  }
  return r;
}

std::string iso_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const RunConfig& c) {
  json j{{"command", c.command}};
  if (!c.weights.empty()) j["k"] = c.weights;
  if (c.K) j["K"] = *c.K;
  if (!c.Ks.empty()) j["K_list"] = c.Ks;
  if (c.H) j["H"] = *c.H;
  if (c.command == "kloosterman") j.update(json{{"n", c.n}, {"m", c.m}, {"c", c.c}});
  if (c.command == "bessel") j.update(json{{"l", c.l}, {"x", c.x}, {"method", c.bessel_method}});
  if (c.command == "lvalue") j.update(json{{"kind", c.lkind}, {"method", c.sym2_method}});
  j["nmax"] = c.nmax;
  j["cmax"] = c.cmax;
  if (c.command == "verify-all") j["max_weight"] = c.max_weight;
  j["truncation"] = c.truncation;
  j["tol"] = c.tol;
  j["eps"] = c.eps;
  j["direct"] = c.direct;
  j["force_rebuild"] = c.force_rebuild;
  return j;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    return s.find_first_of(",\"\n") == std::string::npos ? s : "\"" + s + "\"";
  }
  if (v.is_null()) return "";
  const auto s = v.dump();
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::check(std::string name, bool ok, double metric, double threshold) {
  checks.push_back({std::move(name), ok, metric, threshold});
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"forms",          "kloosterman",   "bessel",         "lvalue",
                                              "petersson-verify", "watson-verify", "fourth-moment", "window-average",
                                              "error-sweep",    "verify-all"};
  if (!commands.count(c.command)) throw ConfigError("unknown subcommand: " + c.command);
  for (int k : c.weights)
    if (k < 2 || k % 2 != 0) throw ConfigError("weights must be even and >= 2");
  if (!(c.tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(c.eps > 0.0 && c.eps < 0.5)) throw ConfigError("eps must lie in (0, 1/2)");
  if (c.nmax < 1 || c.cmax < 1) throw ConfigError("--nmax and --cmax must be >= 1");
  if (c.max_weight < 4 || c.max_weight % 2 != 0) throw ConfigError("--max-weight must be even and >= 4");
  if (c.command == "kloosterman" && c.c < 1) throw ConfigError("--c must be >= 1");
  if (c.truncation < 0) throw ConfigError("--truncation must be >= 0");
}

std::string render(const Report& report, const RunConfig& config) {
  std::ostringstream os;
  switch (config.format) {
    case Format::json: {
      json meta{{"version", HECKEBENCH_VERSION}};
      if (config.timestamp) meta["timestamp"] = iso_now();
      meta["config"] = report.config;
      json checks = json::array();
      for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"metric", num(c.metric)},
                          {"threshold", num(c.threshold)}});
      json doc{{"schema", kSchema},
               {"command", report.command},
               {"meta", meta},
               {"summary", {{"passed", report.passed()}, {"checks", checks}}},
               {"rows", report.rows},
               {"extra", report.extra}};
      os << doc.dump(2) << "\n";
      break;
    }
    case Format::csv: {
      std::vector<std::string> header;
      for (const auto& row : report.rows)
        for (const auto& [key, v] : row.items())
          if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
      for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
      os << "\n";
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < header.size(); ++i)
          os << (i ? "," : "") << (row.contains(header[i]) ? csv_cell(row[header[i]]) : "");
        os << "\n";
      }
      break;
    }
    case Format::text: {
      os << report.command << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
      for (const auto& c : report.checks)
        os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << " metric=" << num(c.metric).dump()
           << " threshold=" << num(c.threshold).dump() << "\n";
      for (const auto& row : report.rows) {
        bool first = true;
        for (const auto& [key, v] : row.items()) {
          os << (first ? "" : " ") << key << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
          first = false;
        }
        os << "\n";
      }
      for (const auto& [key, v] : report.extra.items())
        if (!v.is_array()) os << key << "=" << v.dump() << "\n";
      break;
    }
  }
  return os.str();
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    validate(config);
    if (config.cache_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*config.cache_dir, ec);
      if (ec || !std::filesystem::is_directory(*config.cache_dir))
        throw ConfigError("cache directory is not creatable: " + *config.cache_dir);
      forms::EigenformStore::global().set_cache_dir(std::filesystem::path(*config.cache_dir));
    }
    forms::EigenformStore::global().set_force_rebuild(config.force_rebuild);

    Report report;
    const auto& c = config.command;
    if (c == "forms") report = cmd_forms(config);
    else if (c == "kloosterman") report = cmd_kloosterman(config);
    else if (c == "bessel") report = cmd_bessel(config);
    else if (c == "lvalue") report = cmd_lvalue(config);
    else if (c == "petersson-verify") report = cmd_petersson(config);
    else if (c == "watson-verify") report = cmd_watson(config);
    else if (c == "fourth-moment") report = cmd_fourth_moment(config);
    else if (c == "window-average") report = cmd_window(config);
    else if (c == "error-sweep") report = cmd_error_sweep(config);
    else report = cmd_verify_all(config);
    report.command = c;
    report.config = config_json(config);

    const auto text = render(report, config);
    if (config.out) {
      std::ofstream f(*config.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + *config.out);
      f << text;
    } else {
      std::cout << text;
    }
    return report.passed() ? kExitPass : kExitAssertion;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"heckebench: level-1 Hecke cusp form workbench"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  bool no_timestamp = false;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--out", cfg.out, "write the report to this file");
    s->add_option("--cache-dir", cfg.cache_dir, "eigenform cache directory (overrides HECKEBENCH_CACHE_DIR)");
    s->add_flag("--force-rebuild", cfg.force_rebuild, "ignore cached eigenforms");
    s->add_option("--threads", cfg.threads, "worker threads");
    s->add_flag("--no-timestamp", no_timestamp, "omit the timestamp from JSON reports");
    s->add_option("--truncation", cfg.truncation, "minimum eigenform coefficient count");
    s->add_option("--tol", cfg.tol, "quadrature tolerance");
  };

  auto* forms_cmd = app.add_subcommand("forms", "Hecke eigenbases with relation and Deligne checks");
  forms_cmd->add_option("--k", cfg.weights, "weights");
  forms_cmd->add_option("--nmax", cfg.nmax, "coefficients to print");
  auto* kl = app.add_subcommand("kloosterman", "S(n, m; c) and the Weil bound");
  kl->add_option("--n", cfg.n)->required();
  kl->add_option("--m", cfg.m)->required();
  kl->add_option("--c", cfg.c)->required();
  auto* bes = app.add_subcommand("bessel", "J_l(x)");
  bes->add_option("--l", cfg.l)->required();
  bes->add_option("--x", cfg.x)->required();
  bes->add_option("--method", cfg.bessel_method);
  auto* lv = app.add_subcommand("lvalue", "L-values");
  lv->add_option("--k", cfg.weights, "weight of f (g has weight 2k)");
  lv->add_option("--kind", cfg.lkind, "central_g, sym2fg or sym2_at1");
  lv->add_option("--method", cfg.sym2_method, "dirichlet, mollified or trace_inversion");
  auto* pet = app.add_subcommand("petersson-verify", "Petersson trace formula, both sides");
  pet->add_option("--k", cfg.weights);
  pet->add_option("--nmax", cfg.nmax);
  pet->add_option("--cmax", cfg.cmax);
  auto* wat = app.add_subcommand("watson-verify", "Watson's formula against quadrature");
  wat->add_option("--k", cfg.weights);
  auto* fm = app.add_subcommand("fourth-moment", "spectral fourth moment");
  fm->add_option("--k", cfg.weights);
  fm->add_flag("--direct", cfg.direct, "also integrate |F|^4 directly");
  auto* wa = app.add_subcommand("window-average", "weight-window average of fourth moments");
  wa->add_option("--K", cfg.K)->required();
  wa->add_option("--H", cfg.H)->required();
  wa->add_flag("--direct", cfg.direct, "cross-check one weight by quadrature");
  auto* es = app.add_subcommand("error-sweep", "off-diagonal region sweep and E1 comparison");
  es->add_option("--K", cfg.Ks, "weight scales (default 40 60)");
  es->add_option("--H", cfg.H, "window length (default K^0.8)");
  es->add_option("--eps", cfg.eps);
  auto* va = app.add_subcommand("verify-all", "summary of the identity checks");
  va->add_option("--max-weight", cfg.max_weight);
  va->add_option("--nmax", cfg.nmax);
  va->add_option("--cmax", cfg.cmax);
  for (auto* s : {forms_cmd, kl, bes, lv, pet, wat, fm, wa, es, va}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kExitPass;
    std::cerr << app.help();
    return kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  cfg.timestamp = !no_timestamp;
  return run(cfg, std::cerr);
}

}  // namespace heckebench::cli
