#pragma once

#include <functional>
#include <span>
#include <vector>

namespace heckebench::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once per n and cached (thread-safe).
const GaussLegendre& gauss_legendre(int n);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
double composite_gl(const std::function<double(double)>& f, double a, double b, int panels,
                    int order = 20);

/// Globally adaptive Gauss-Kronrod (61-point) quadrature on a finite interval.
Estimate adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                  double rel_tol = 0.0, unsigned max_depth = 18);

}  // namespace heckebench::quad
