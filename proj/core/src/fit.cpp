#include "heckebench/fit.hpp"

#include <cmath>
#include <map>

#include "heckebench/errors.hpp"

namespace heckebench::fit {

ConstantFit fit_constant(std::span<const double> measured, std::span<const double> bound,
                         std::span<const int> group) {
  if (measured.size() != bound.size() || measured.size() != group.size())
    throw ParameterError("fit_constant: size mismatch");
  if (measured.empty()) throw ParameterError("fit_constant: no points");
  ConstantFit f;
  std::map<int, double> per_group;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    if (!(bound[i] > 0.0)) throw ParameterError("fit_constant: bounds must be positive");
    const double r = std::abs(measured[i]) / bound[i];
    f.ratios.push_back(r);
    auto [it, fresh] = per_group.try_emplace(group[i], r);
    if (!fresh) it->second = std::max(it->second, r);
    f.constant = std::max(f.constant, r);
  }
  double lo = INFINITY, hi = 0.0;
  for (const auto& [id, c] : per_group) {
    f.group_constants.push_back(c);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  f.drift = lo > 0.0 ? hi / lo : INFINITY;
  const auto& c = f.group_constants;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      f.growth = std::max(f.growth, c[i] > 0.0 ? c[j] / c[i] : (c[j] > 0.0 ? INFINITY : 1.0));
  f.stable = f.growth < kDriftLimit;
  return f;
}

ConstantFit fit_constant(std::span<const double> measured, std::span<const double> bound) {
  std::vector<int> ids(measured.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return fit_constant(measured, bound, ids);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace heckebench::fit
