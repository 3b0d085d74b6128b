#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "heckebench/arith.hpp"
#include "heckebench/errors.hpp"

using namespace heckebench;
using namespace heckebench::arith;

TEST(Arith, SmallFunctions) {
  EXPECT_EQ(tau(6), 4);
  EXPECT_EQ(tau(1), 1);
  EXPECT_EQ(tau(720), 30);
  EXPECT_EQ(moebius(4), 0);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(gcd3(4, 6, 10), 2);
  EXPECT_THROW(tau(0), DomainError);
  EXPECT_THROW(moebius(-3), DomainError);
}

TEST(Arith, FactorizeRoundTrip) {
  for (Int n = 1; n <= 5000; ++n) {
    Int prod = 1;
    for (auto [p, e] : factorize(n))
      for (int i = 0; i < e; ++i) prod *= p;
    ASSERT_EQ(prod, n);
  }
}

TEST(Arith, InverseAndPrimes) {
  EXPECT_EQ(inverse_mod(3, 7), 5);
  EXPECT_EQ(primes_up_to(30).size(), 10u);
  for (Int c : {7, 12, 101, 1000})
    for (Int b = 1; b < c; ++b)
      if (std::gcd(b, c) == 1) ASSERT_EQ((b * inverse_mod(b, c)) % c, 1);
}

// Direct summation with 40-digit arithmetic (tests/oracles/oracles.py).
TEST(Kloosterman, OracleValues) {
  struct Case {
    Int n, m, c;
    double value;
  };
  const Case cases[] = {{1, 1, 1, 1.0},
                        {1, 1, 3, -1.0},
                        {1, 1, 5, 0.38196601125010515},
                        {1, 1, 6, -1.0},
                        {2, 3, 7, 1.1099162641747424},
                        {5, 7, 12, 4.0},
                        {3, 3, 64, 22.192637525154359},
                        {10, 15, 105, 6.415501886438706},
                        {0, 0, 12, 4.0}};
  for (const auto& c : cases) {
    EXPECT_NEAR(kloosterman(c.n, c.m, c.c).value, c.value, 1e-12) << c.n << " " << c.m << " " << c.c;
    EXPECT_NEAR(kloosterman_direct(c.n, c.m, c.c), c.value, 1e-12);
  }
  EXPECT_THROW(kloosterman(1, 1, 0), DomainError);
}

TEST(Kloosterman, WeilBoundExamples) {
  EXPECT_NEAR(weil_bound(1, 1, 3), 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(weil_bound(0, 0, 5), 10.0, 1e-12);
  EXPECT_LE(std::abs(kloosterman(0, 0, 5).value), 10.0);
  EXPECT_NEAR(kloosterman(0, 0, 5).value, 4.0, 1e-12);
}

TEST(Kloosterman, CrtFactorization) {
  // S(1,1;6) = S(1, 3^-2; 2) S(1, 2^-2; 3).
  const double lhs = kloosterman(1, 1, 6).value;
  const double rhs = kloosterman(1, inverse_mod(9 % 2, 2), 2).value * kloosterman(1, inverse_mod(4 % 3, 3), 3).value;
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(KloostermanProperty, RandomTriples) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Int> cd(1, 10000), nd(0, 100000);
  for (int i = 0; i < 300; ++i) {
    const Int c = cd(rng), n = nd(rng), m = nd(rng);
    const auto v = kloosterman(n, m, c);
    ASSERT_LE(std::abs(v.value), v.weil + 1e-9);
    ASSERT_LT(std::abs(kloosterman_raw(n, m, c).imag()), 1e-9 * c);
    ASSERT_NEAR(v.value, kloosterman_direct(n, m, c), 1e-9 * c);
    ASSERT_NEAR(v.value, kloosterman(m, n, c).value, 1e-9 * c);
  }
}

TEST(KloostermanProperty, CacheIsConsistent) {
  clear_kloosterman_cache();
  const double a = kloosterman(17, 4, 360).value;
  EXPECT_GE(kloosterman_cache_size(), 1u);
  EXPECT_EQ(a, kloosterman(17, 4, 360).value);
}
