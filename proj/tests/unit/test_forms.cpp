#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "heckebench/arith.hpp"
#include "heckebench/eigenform_store.hpp"
#include "heckebench/errors.hpp"
#include "heckebench/forms.hpp"
#include "heckebench/fundamental_domain.hpp"
#include "heckebench/petersson.hpp"
#include "heckebench/qseries.hpp"

using namespace heckebench;
using namespace heckebench::forms;

namespace {

// Ramanujan tau(1..12) from q prod (1 - q^n)^24 (tests/oracles/oracles.py).
constexpr long kTau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944};

}  // namespace

TEST(QSeries, DeltaMatchesTau) {
  const auto d = qseries::delta(13);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(d[n], kTau[n - 1]) << n;
}

TEST(QSeriesProperty, FastMultiplyMatchesNaive) {
  const auto a = qseries::eisenstein4(80), b = qseries::eisenstein6(80);
  EXPECT_EQ(qseries::multiply(a, b, 80), qseries::multiply_naive(a, b, 80));
}

TEST(Basis, DimensionsAndEchelon) {
  EXPECT_EQ(cusp_dimension(4), 0);
  EXPECT_EQ(cusp_dimension(12), 1);
  EXPECT_EQ(cusp_dimension(14), 0);
  EXPECT_EQ(cusp_dimension(24), 2);
  EXPECT_EQ(cusp_dimension(60), 5);
  EXPECT_THROW(cusp_dimension(13), DomainError);
  EXPECT_EQ(cusp_basis(4, 10).dimension(), 0);
  const auto b12 = cusp_basis(12, 10);
  ASSERT_EQ(b12.dimension(), 1);
  EXPECT_EQ(b12.coefficient(0, 1), 1);
  EXPECT_EQ(b12.coefficient(0, 2), -24);
  const auto b36 = cusp_basis(36, 20);
  for (int i = 0; i < b36.dimension(); ++i)
    for (int j = 0; j <= i; ++j) EXPECT_EQ(b36.coefficient(i, j + 1), i == j ? 1 : 0);
}

TEST(Eigenforms, Delta) {
  const auto f = hecke_eigenforms(12, 50);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].coefficient(1), 1.0);
  EXPECT_NEAR(f[0].coefficient(2), -0.5303300858899106433, 1e-14);
  EXPECT_NEAR(f[0].coefficient(4), -0.71875, 1e-14);
  EXPECT_NEAR(f[0].coefficient(5), 0.69121333320473499095, 1e-14);
  EXPECT_THROW(hecke_eigenforms(12, 1), ParameterError);
}

TEST(Eigenforms, DimensionOneProducts) {
  // Delta E4 and Delta E6: a(2), a(3) from exact q-expansions.
  const auto f16 = hecke_eigenforms(16, 20);
  EXPECT_NEAR(f16[0].raw(2), 216.0, 1e-6);
  EXPECT_NEAR(f16[0].raw(3), -3348.0, 1e-5);
  const auto f18 = hecke_eigenforms(18, 20);
  EXPECT_NEAR(f18[0].raw(2), -528.0, 1e-6);
  EXPECT_NEAR(f18[0].raw(3), -4284.0, 1e-5);
}

TEST(Eigenforms, Weight24Charpoly) {
  // T_2 on S_24: x^2 - 1080 x - 20468736.
  const auto cp = hecke_charpoly(24, 2, 10);
  ASSERT_EQ(cp.size(), 3u);
  EXPECT_EQ(cp[0], -20468736);
  EXPECT_EQ(cp[1], -1080);
  EXPECT_EQ(cp[2], 1);
  const auto f = hecke_eigenforms(24, 40);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(f[0].coefficient(2), -1.3867134517319788643, 1e-12);
  EXPECT_NEAR(f[1].coefficient(2), 1.7596017933733222854, 1e-12);
}

class HeckeSweep : public ::testing::TestWithParam<int> {};

TEST_P(HeckeSweep, RelationsAndDeligne) {
  const int k = GetParam();
  for (const auto& f : *EigenformStore::global().get(k)) {
    ASSERT_EQ(f.coefficient(1), 1.0);
    for (long n = 1; n <= 200; ++n) {
      ASSERT_LE(std::abs(f.coefficient(n)), static_cast<double>(arith::tau(n)) + 1e-9);
      for (long m = 1; n * m <= 200; ++m) {
        const long g = std::gcd(n, m);
        double rhs = 0.0;
        for (long d = 1; d <= g; ++d)
          if (g % d == 0) rhs += f.coefficient(n * m / (d * d));
        ASSERT_NEAR(f.coefficient(n) * f.coefficient(m), rhs, 1e-9) << k << " " << n << " " << m;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Weights, HeckeSweep, ::testing::Values(12, 24, 32, 36, 48));

TEST(Gl3, Identities) {
  const auto& f = EigenformStore::global().get(12)->front();
  const auto A = gl3_coefficients(f, 30, 30);
  EXPECT_EQ(A(1, 1), 1.0);
  EXPECT_NEAR(A(2, 1), f.coefficient(4), 1e-14);
  EXPECT_NEAR(A(4, 1), f.coefficient(16) + 1.0, 1e-13);
  for (int n = 1; n <= 30; ++n) {
    EXPECT_NEAR(A(n, 1), gl3_a_n1(f, n), 1e-12);
    for (int r = 1; r <= 30; ++r) ASSERT_NEAR(A(n, r), A(r, n), 1e-12);
  }
  EXPECT_THROW(A(31, 1), ParameterError);
  EXPECT_LT(gl3_dirichlet_defect(f), 1e-10);
}

TEST(Petersson, Examples) {
  const auto p4 = petersson_sides(4, 1, 1, 200);
  EXPECT_EQ(p4.lhs, 0.0);
  EXPECT_LE(std::abs(p4.rhs), p4.tail_bound + 1e-8);
  const auto a = petersson_sides(12, 1, 1, 100);
  EXPECT_NEAR(a.lhs, a.rhs, 1e-8);
  const auto b = petersson_sides(12, 1, 2, 100);
  EXPECT_NEAR(b.lhs, b.rhs, 1e-8);
  EXPECT_FALSE(b.accuracy_warning);
}

TEST(FundamentalDomain, VolumeAndPeterssonNorm) {
  const auto vol = fundamental_domain_integral(0, FdIntegrand::one, nullptr, nullptr, 1e-12);
  EXPECT_NEAR(vol.value.real(), M_PI / 3.0, 1e-12);
  // <Delta, Delta> at tau(1) = 1; literature value (also recomputed in tests/oracles/oracles.py).
  const auto& d = EigenformStore::global().get(12)->front();
  const auto n2 = fundamental_domain_integral(12, FdIntegrand::abs2, &d, nullptr, 1e-11);
  EXPECT_NEAR(n2.value.real() / 1.0353620568043209e-6, 1.0, 1e-9);
  EXPECT_THROW(fundamental_domain_integral(12, FdIntegrand::abs4, &d, nullptr, 1e-9), ParameterError);
}

TEST(Store, CacheRoundTripAndMagic) {
  const auto dir = std::filesystem::temp_directory_path() / "heckebench_unit_store";
  std::filesystem::remove_all(dir);
  EigenformStore s(dir);
  const auto a = s.get(24, 100);
  ASSERT_TRUE(std::filesystem::exists(s.cache_file(24)));
  const auto back = read_eigenform_file(s.cache_file(24), 24);
  ASSERT_TRUE(back.has_value());
  ASSERT_EQ(back->size(), a->size());
  for (std::size_t i = 0; i < a->size(); ++i)
    for (int n = 1; n <= 100; ++n) ASSERT_EQ((*back)[i].coefficient(n), (*a)[i].coefficient(n));
  {
    std::ofstream f(s.cache_file(24));
    f << "# some other format\n";
  }
  EXPECT_FALSE(read_eigenform_file(s.cache_file(24), 24).has_value());
  EigenformStore fresh(dir);
  const auto rebuilt = fresh.get(24, 100);
  EXPECT_EQ(rebuilt->size(), 2u);
  EXPECT_TRUE(read_eigenform_file(fresh.cache_file(24), 24).has_value());
  std::filesystem::remove_all(dir);
}
