#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace heckebench::qseries {

/// Truncated power series in q with exact integer coefficients; entry n is the
/// coefficient of q^n.
using Series = std::vector<mpz_class>;

/// First `len` coefficients of a*b, via one big-integer product per sign pair
/// (Kronecker substitution on limb-aligned fields).
Series multiply(const Series& a, const Series& b, std::size_t len);

/// Schoolbook product, kept as a reference for tests and benchmarks.
Series multiply_naive(const Series& a, const Series& b, std::size_t len);

/// a^e truncated to `len` coefficients (e >= 0).
Series power(const Series& a, int e, std::size_t len);

/// sigma_{j}(n) for n < len (entry 0 is 0).
Series divisor_sums(int j, std::size_t len);

/// Eisenstein series E_4 = 1 + 240 sum sigma_3(n) q^n and E_6 = 1 - 504 sum sigma_5(n) q^n.
Series eisenstein4(std::size_t len);
Series eisenstein6(std::size_t len);

/// Delta = q prod (1 - q^n)^24 = (E_4^3 - E_6^2)/1728.
Series delta(std::size_t len);

/// Largest coefficient bit length.
std::size_t max_bits(const Series& a);

}  // namespace heckebench::qseries
