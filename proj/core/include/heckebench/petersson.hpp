#pragma once

#include <vector>

#include "heckebench/forms.hpp"

namespace heckebench::forms {

struct PeterssonRhs {
  double value = 0.0;       ///< delta_{n=m} + 2 pi i^{-k} sum_{c <= c_max} S(n,m;c)/c J_{k-1}(4 pi sqrt(nm)/c)
  double tail_bound = 0.0;  ///< bound on the discarded terms c > c_max
};

/// Right side of the Petersson formula truncated at c_max. The tail bound uses
/// |J_l(x)| <= (x/2)^l / l! and Weil's bound, summed explicitly to 10 c_max and by an
/// integral beyond.
PeterssonRhs petersson_rhs(int k, Int n, Int m, int c_max);

struct PeterssonSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double tail_bound = 0.0;
  bool accuracy_warning = false;  ///< tail bound above 1e-8
  int dimension = 0;
};

/// (2 pi^2/(k-1)) sum_f a_f(n) a_f(m) / L(1, sym^2 f) against petersson_rhs.
PeterssonSides petersson_sides(int k, Int n, Int m, int c_max);

/// Same with the eigenbasis and its L(1, sym^2 f) values supplied (for sweeps).
PeterssonSides petersson_sides(const std::vector<EigenformRecord>& basis,
                               const std::vector<double>& l1_sym2, int k, Int n, Int m,
                               int c_max);

}  // namespace heckebench::forms
