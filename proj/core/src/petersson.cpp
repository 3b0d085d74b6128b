#include "heckebench/petersson.hpp"

#include <cmath>
#include <numbers>

#include "heckebench/arith.hpp"
#include "heckebench/besselx.hpp"
#include "heckebench/eigenform_store.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/lfun.hpp"

namespace heckebench::forms {

namespace {
constexpr double kPi = std::numbers::pi;
}

PeterssonRhs petersson_rhs(int k, Int n, Int m, int c_max) {
  if (k < 2 || k % 2 != 0) throw DomainError("Petersson: weight must be even");
  if (n < 1 || m < 1) throw DomainError("Petersson: n, m must be >= 1");
  if (c_max < 1) throw ParameterError("Petersson: c_max must be >= 1");
  const int l = k - 1;
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  const double A = 4.0 * kPi * std::sqrt(static_cast<double>(n) * static_cast<double>(m));
  double sum = 0.0;
  for (Int c = 1; c <= c_max; ++c) {
    const double s = arith::kloosterman(n, m, c).value;
    if (s == 0.0) continue;
    sum += s / c * besselx::bessel_j(l, A / c);
  }
  PeterssonRhs r;
  r.value = (n == m ? 1.0 : 0.0) + 2.0 * kPi * sign * sum;

  // |J_l(x)| <= (x/2)^l / l!, evaluated in logs.
  const double log_lfact = std::lgamma(l + 1.0);
  auto jbound = [&](double x) { return std::exp(l * std::log(x / 2.0) - log_lfact); };
  const Int explicit_end = 10LL * c_max;
  double tail = 0.0;
  for (Int c = c_max + 1; c <= explicit_end; ++c)
    tail += arith::weil_bound(n, m, c) / c * jbound(A / c);
  // Beyond: tau(c) <= 2 sqrt(c) and gcd(n,m,c) <= min(n,m), so each term is at most
  // 2 sqrt(g) (A/2)^l / l! c^{-l}, and sum_{c > C} c^{-l} <= C^{1-l}/(l-1).
  const double g = static_cast<double>(std::min(n, m));
  if (l > 1) {
    const double C = static_cast<double>(explicit_end);
    tail += 2.0 * std::sqrt(g) * std::exp(l * std::log(A / 2.0) - log_lfact + (1.0 - l) * std::log(C)) /
            (l - 1.0);
  } else {
    tail = INFINITY;
  }
  r.tail_bound = 2.0 * kPi * tail;
  return r;
}

PeterssonSides petersson_sides(const std::vector<EigenformRecord>& basis,
                               const std::vector<double>& l1_sym2, int k, Int n, Int m,
                               int c_max) {
  if (basis.size() != l1_sym2.size()) throw DependencyError("Petersson: missing L(1, sym^2 f) values");
  PeterssonSides out;
  out.dimension = static_cast<int>(basis.size());
  double lhs = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    lhs += basis[i].coefficient(n) * basis[i].coefficient(m) / l1_sym2[i];
  out.lhs = 2.0 * kPi * kPi / (k - 1.0) * lhs;
  const auto rhs = petersson_rhs(k, n, m, c_max);
  out.rhs = rhs.value;
  out.tail_bound = rhs.tail_bound;
  out.accuracy_warning = rhs.tail_bound > 1e-8;
  return out;
}

PeterssonSides petersson_sides(int k, Int n, Int m, int c_max) {
  if (k < 4 || k % 2 != 0) throw DomainError("Petersson: weight must be even and >= 4");
  const auto set = EigenformStore::global().get(k, lfun::required_truncation_sym2_at1(k));
  std::vector<double> l1;
  for (const auto& f : *set) l1.push_back(lfun::l_sym2_at1(f, lfun::Sym2Method::dirichlet).value);
  return petersson_sides(*set, l1, k, n, m, c_max);
}

}  // namespace heckebench::forms
