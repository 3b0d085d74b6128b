#include "heckebench/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "heckebench/concurrent_cache.hpp"
#include "heckebench/errors.hpp"

namespace heckebench::arith {

namespace {

constexpr Int kFastPathThreshold = 10000;

void require_positive(Int v, const char* what) {
  if (v <= 0) throw DomainError(std::string(what) + " must be a positive integer");
}

Int mod(Int a, Int c) {
  Int r = a % c;
  return r < 0 ? r + c : r;
}

struct TripleHash {
  std::size_t operator()(const std::tuple<Int, Int, Int>& t) const noexcept {
    auto [a, b, c] = t;
    std::size_t h = std::hash<Int>{}(a);
    h ^= std::hash<Int>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<Int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

ConcurrentCache<std::tuple<Int, Int, Int>, double, TripleHash>& cache() {
  static ConcurrentCache<std::tuple<Int, Int, Int>, double, TripleHash> instance;
  return instance;
}

Int mulmod(Int a, Int b, Int c) {
  return static_cast<Int>((static_cast<__int128>(a) * b) % c);
}

}  // namespace

Factorization factorize(Int n) {
  require_positive(n, "factorize argument");
  Factorization f;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

Int tau(Int n) {
  require_positive(n, "tau argument");
  Int t = 1;
  for (auto [p, e] : factorize(n)) t *= e + 1;
  return t;
}

int moebius(Int n) {
  require_positive(n, "moebius argument");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

Int gcd3(Int n, Int m, Int c) {
  if (n < 0 || m < 0 || c <= 0) throw DomainError("gcd3 needs n, m >= 0 and c >= 1");
  return std::gcd(std::gcd(n, m), c);
}

Int arithmetic_function(ArithKind kind, std::span<const Int> args) {
  const std::size_t need = kind == ArithKind::gcd3 ? 3 : 1;
  if (args.size() != need) throw ParameterError("wrong number of arguments");
  for (Int a : args) require_positive(a, "arithmetic function argument");
  switch (kind) {
    case ArithKind::tau: return tau(args[0]);
    case ArithKind::moebius: return moebius(args[0]);
    case ArithKind::gcd3: return gcd3(args[0], args[1], args[2]);
  }
  throw ParameterError("unknown arithmetic function");
}

Int inverse_mod(Int b, Int c) {
  require_positive(c, "modulus");
  if (c == 1) return 0;
  Int old_r = mod(b, c), r = c, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw DomainError("inverse_mod: argument not coprime to modulus");
  return mod(old_s, c);
}

std::vector<Int> primes_up_to(Int n) {
  std::vector<Int> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (Int p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (Int q = p * p; q <= n; q += p) composite[q] = true;
  }
  return primes;
}

std::complex<double> kloosterman_raw(Int n, Int m, Int c) {
  if (c <= 0) throw DomainError("Kloosterman modulus must be >= 1");
  if (c == 1) return {1.0, 0.0};
  n = mod(n, c);
  m = mod(m, c);

  // e(j/c) table, one transcendental call pair per residue.
  std::vector<double> cos_t(c), sin_t(c);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(c);
  for (Int j = 0; j < c; ++j) {
    cos_t[j] = std::cos(step * static_cast<double>(j));
    sin_t[j] = std::sin(step * static_cast<double>(j));
  }

  double re = 0.0, im = 0.0;
  for (Int b = 1; b < c; ++b) {
    if (std::gcd(b, c) != 1) continue;
    const Int bbar = inverse_mod(b, c);
    const Int idx = (mulmod(n, b, c) + mulmod(m, bbar, c)) % c;
    re += cos_t[idx];
    im += sin_t[idx];
  }
  if (std::abs(im) >= 1e-9 * static_cast<double>(c)) {
    throw AccuracyError("Kloosterman sum has non-negligible imaginary part", std::abs(im));
  }
  return {re, im};
}

double kloosterman_direct(Int n, Int m, Int c) {
  return kloosterman_raw(n, m, c).real();
}

double kloosterman_multiplicative(Int n, Int m, Int c) {
  if (c <= 0) throw DomainError("Kloosterman modulus must be >= 1");
  const Factorization f = factorize(c);
  if (f.size() < 2) return kloosterman_direct(n, m, c);
  // Split off the first prime-power part: c = c1 c2 with gcd(c1, c2) = 1.
  Int c1 = 1;
  for (int i = 0; i < f[0].second; ++i) c1 *= f[0].first;
  const Int c2 = c / c1;
  const Int c1bar = inverse_mod(c1 % c2, c2);
  const Int c2bar = inverse_mod(c2 % c1, c1);
  const Int m1 = mulmod(mod(m, c1), mulmod(c2bar, c2bar, c1), c1);
  const Int m2 = mulmod(mod(m, c2), mulmod(c1bar, c1bar, c2), c2);
  return kloosterman_direct(n, m1, c1) * kloosterman_multiplicative(n, m2, c2);
}

KloostermanValue kloosterman(Int n, Int m, Int c) {
  if (c <= 0) throw DomainError("Kloosterman modulus must be >= 1");
  if (n < 0 || m < 0) throw DomainError("Kloosterman arguments n, m must be >= 0");
  const Int nr = mod(n, c), mr = mod(m, c);
  const double value = cache().get_or_compute({nr, mr, c}, [&] {
    if (c > kFastPathThreshold && factorize(c).size() >= 2) {
      return kloosterman_multiplicative(nr, mr, c);
    }
    return kloosterman_direct(nr, mr, c);
  });
  return {n, m, c, value, weil_bound(n, m, c)};
}

double weil_bound(Int n, Int m, Int c) {
  return static_cast<double>(tau(c)) * std::sqrt(static_cast<double>(c)) *
         std::sqrt(static_cast<double>(gcd3(n, m, c)));
}

std::size_t kloosterman_cache_size() { return cache().size(); }
void clear_kloosterman_cache() { cache().clear(); }

}  // namespace heckebench::arith
