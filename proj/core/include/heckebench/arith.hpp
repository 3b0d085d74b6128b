#pragma once

#include <cstdint>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace heckebench::arith {

using Int = std::int64_t;

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
using Factorization = std::vector<std::pair<Int, int>>;

Factorization factorize(Int n);

/// Number of positive divisors.
Int tau(Int n);
/// Möbius function.
int moebius(Int n);
Int gcd3(Int n, Int m, Int c);

enum class ArithKind { tau, moebius, gcd3 };

/// Dispatcher over the elementary multiplicative functions. `tau` and `moebius`
/// read args[0]; `gcd3` reads args[0..2]. Zero or negative input is a domain error.
Int arithmetic_function(ArithKind kind, std::span<const Int> args);

/// Inverse of b modulo c; requires gcd(b, c) = 1.
Int inverse_mod(Int b, Int c);

/// Sieve of Eratosthenes: all primes <= n.
std::vector<Int> primes_up_to(Int n);

struct KloostermanValue {
  Int n = 0;
  Int m = 0;
  Int c = 1;
  double value = 0.0;
  double weil = 0.0;
};

/// S(n, m; c) by direct summation over the reduced residues, returning the raw
/// complex sum. Throws AccuracyError if the imaginary part exceeds 1e-9 c.
std::complex<double> kloosterman_raw(Int n, Int m, Int c);

/// Direct summation (always, regardless of size).
double kloosterman_direct(Int n, Int m, Int c);

/// Factorization plus the twisted multiplicative identity over coprime parts;
/// prime-power parts are summed directly.
double kloosterman_multiplicative(Int n, Int m, Int c);

/// S(n, m; c) with the default strategy: the multiplicative route when c > 1e4
/// and c has at least two distinct prime factors, direct summation otherwise.
/// Results are cached by (n mod c, m mod c, c).
KloostermanValue kloosterman(Int n, Int m, Int c);

/// tau(c) sqrt(c) sqrt(gcd(n, m, c)).
double weil_bound(Int n, Int m, Int c);

/// Number of cached Kloosterman values (process-wide).
std::size_t kloosterman_cache_size();
void clear_kloosterman_cache();

}  // namespace heckebench::arith
