#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "dini/zeros.hpp"

using namespace dini;
using std::numbers::pi;

namespace {

struct ZeroRef {
  double nu, h;
  double z[4];  // first four positive zeros, mpmath at 30 digits
};

constexpr ZeroRef kZeros[] = {
    {0.0, 0.5, {0.94077056394973735365, 3.9593711850125741953, 7.0863808479617307928,
                10.222458396638690149}},
    {1.5, 2.0, {3.2860065995081755274, 6.360678173709008578, 9.477196047926253604,
                12.605889618118280721}},
    {-0.75, 0.5, {2.687327317367005915, 5.8634541541821440254, 9.0146367813380577057,
                  12.160777844186884699}},
    {0.0, -1.0, {3.5679493612078775195, 6.8725724302518632551, 10.075016201529242192,
                 13.248567520350208959}},
    {3.0, 0.5, {4.4240534204422633963, 8.0872445503903380734, 11.393159799679698082,
                14.621580107310333006}},
    {-0.9, 2.0, {0.38194520318993282431, 2.9027296057328924104, 5.8589715717189654562,
                 8.9318628051968087694}},
};

struct GroundRef {
  double nu, h, z0;
};

constexpr GroundRef kGround[] = {
    {-0.75, 0.5, 0.3724272658499143811},
    {0.0, -1.0, 1.6082794717268792669},
    {-0.8, 0.5, 0.36999159151235642944},
    {-0.999, 0.5, 0.036459092874189635556},
};

}  // namespace

TEST(Zeros, HalfIntegerClosedForms) {
  const ZeroTable a = build_zero_table(SpectralParams::make(-0.5, 0.5), 200);
  const ZeroTable b = build_zero_table(SpectralParams::make(0.5, 0.5), 200);
  EXPECT_EQ(a.n_min(), 0);
  EXPECT_EQ(a.zero(0), 0.0);
  EXPECT_EQ(b.n_min(), 1);
  for (int n = 1; n <= 200; ++n) {
    EXPECT_NEAR(a.zero(n), pi * n, 1e-12 * std::max(1.0, pi * n)) << n;
    EXPECT_NEAR(b.zero(n), pi * (n - 0.5), 1e-12 * std::max(1.0, pi * n)) << n;
  }
}

TEST(Zeros, ReferenceValues) {
  for (const ZeroRef& r : kZeros) {
    const ZeroTable t = build_zero_table(SpectralParams::make(r.nu, r.h), 10);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(t.zero(k + 1), r.z[k], 1e-12) << r.nu << " " << r.h << " n=" << k + 1;
    }
  }
}

TEST(Zeros, GroundStateReferenceValues) {
  for (const GroundRef& r : kGround) {
    const ZeroTable t = build_zero_table(SpectralParams::make(r.nu, r.h), 3);
    ASSERT_EQ(t.n_min(), 0);
    EXPECT_NEAR(t.zero(0), r.z0, 1e-12) << r.nu << " " << r.h;
    EXPECT_LT(t.eigenvalue(0), 0.0);
    EXPECT_NEAR(bessel_ih(t.params(), t.zero(0)), 0.0, 1e-12);
  }
}

TEST(Zeros, PlusRegimeHasNoGroundState) {
  const ZeroTable t = build_zero_table(SpectralParams::make(0.0, 0.5), 3);
  EXPECT_EQ(t.n_min(), 1);
  EXPECT_THROW(t.zero(0), IndexError);
  EXPECT_THROW(t.zero(4), IndexError);
}

TEST(Zeros, ZeroRegimeStoresExactZero) {
  const ZeroTable t = build_zero_table(SpectralParams::make(0.7, -0.7), 3);
  EXPECT_EQ(t.params().regime, Regime::zero);
  EXPECT_EQ(t.zero(0), 0.0);
  EXPECT_EQ(t.eigenvalue(0), 0.0);
}

class ZeroTableInvariants : public testing::TestWithParam<std::pair<double, double>> {};

TEST_P(ZeroTableInvariants, ResidualsInterlacingAndAsymptotics) {
  const auto [nu, h] = GetParam();
  const SpectralParams p = SpectralParams::make(nu, h);
  const ZeroTable t = build_zero_table(p, 300);
  for (int n = std::max(1, t.n_min()); n <= t.n_max(); ++n) {
    const double z = t.zero(n);
    EXPECT_LE(std::abs(bessel_jh(p, z)), 1e-10 * (1.0 + z)) << n;
    const Bracket& b = t.bracket(n);
    EXPECT_LE(b.lo, z);
    EXPECT_GE(b.hi, z);
    EXPECT_LE(b.width(), 1e-13 * std::max(1.0, z));
    if (n > std::max(1, t.n_min())) {
      EXPECT_GT(z, t.zero(n - 1));
    }
  }
  // exactly one sign change of J_nu between consecutive zeros
  for (int n = std::max(1, t.n_min()); n < t.n_max(); ++n) {
    const double a = t.zero(n), b = t.zero(n + 1);
    int changes = 0;
    double prev = bessel_j(nu, a);
    for (int i = 1; i <= 64; ++i) {
      const double v = bessel_j(nu, a + (b - a) * i / 64.0);
      if ((v > 0) != (prev > 0)) ++changes;
      prev = v;
    }
    EXPECT_EQ(changes, 1) << n;
  }
  // |z_n - pi n| settles: monotone over the last 20% of indices, with little movement
  const int n_last = t.n_max(), n_mark = n_last - n_last / 5;
  double lo_d = 1e300, hi_d = -1e300;
  int dir = 0;
  for (int n = n_mark; n <= n_last; ++n) {
    const double d = t.zero(n) - pi * n;
    lo_d = std::min(lo_d, d);
    hi_d = std::max(hi_d, d);
    if (n > n_mark) {
      const double step = d - (t.zero(n - 1) - pi * (n - 1));
      const int s = (step > 0) - (step < 0);
      if (dir == 0) dir = s;
      EXPECT_TRUE(s == 0 || s == dir) << n;
    }
  }
  EXPECT_LE(hi_d - lo_d, 1e-2);
  EXPECT_TRUE(std::isfinite(t.azer_constant()));
  // the tail-bound constant dominates n - z_n/pi over the table
  for (int n = std::max(1, t.n_min()); n <= n_last; ++n) {
    EXPECT_GE(t.zero(n), pi * (n - t.lower_shift()) - 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, ZeroTableInvariants,
                         testing::Values(std::pair{-0.9, -1.0}, std::pair{-0.9, 0.5},
                                         std::pair{-0.5, 0.0}, std::pair{0.0, 2.0},
                                         std::pair{1.5, -3.0}, std::pair{3.0, 0.5},
                                         std::pair{5.0, 10.0}));

TEST(Zeros, ExtensionMatchesDirectBuild) {
  const SpectralParams p = SpectralParams::make(0.3, -1.2);
  const ZeroTable small = build_zero_table(p, 20);
  const ZeroTable grown = extend_zero_table(small, 80);
  const ZeroTable direct = build_zero_table(p, 80);
  ASSERT_EQ(grown.n_max(), 80);
  for (int n = 0; n <= 80; ++n) EXPECT_NEAR(grown.zero(n), direct.zero(n), 1e-13 * (1 + n));
}

TEST(Zeros, CsvRoundTripIsExact) {
  const ZeroTable t = build_zero_table(SpectralParams::make(-0.75, 0.5), 40);
  std::stringstream ss;
  write_zero_table_csv(ss, t);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "nu,H,n,zero,bracket_lo,bracket_hi,tol");
  const ZeroTable u = read_zero_table_csv(ss);
  ASSERT_EQ(u.n_min(), t.n_min());
  ASSERT_EQ(u.n_max(), t.n_max());
  for (int n = t.n_min(); n <= t.n_max(); ++n) {
    EXPECT_EQ(u.zero(n), t.zero(n));
    EXPECT_EQ(u.bracket(n).lo, t.bracket(n).lo);
    EXPECT_EQ(u.bracket(n).hi, t.bracket(n).hi);
  }
  EXPECT_EQ(u.tol(), t.tol());
  // a reloaded table still extends
  EXPECT_NEAR(extend_zero_table(u, 60).zero(60), build_zero_table(t.params(), 60).zero(60), 1e-11);
}

TEST(Zeros, CsvRejectsMalformedInput) {
  std::stringstream bad_header("nu,H,n,zero\n0,0.5,1,1\n");
  EXPECT_THROW(read_zero_table_csv(bad_header), CacheFormatError);
  std::stringstream gap("nu,H,n,zero,bracket_lo,bracket_hi,tol\n0,0.5,1,1,1,1,1e-13\n0,0.5,3,4,4,4,1e-13\n");
  EXPECT_THROW(read_zero_table_csv(gap), CacheFormatError);
}

TEST(Zeros, CacheDirectoryIsUsed) {
  const auto dir = std::filesystem::temp_directory_path() / "dini_zero_cache_test";
  std::filesystem::remove_all(dir);
  ::setenv("DINI_CACHE_DIR", dir.c_str(), 1);
  const SpectralParams p = SpectralParams::make(1.25, 0.5);
  const ZeroTable first = cached_zero_table(p, 30);
  EXPECT_TRUE(std::filesystem::exists(zero_cache_path(dir.string(), p)));
  const ZeroTable second = cached_zero_table(p, 30);
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(first.zero(n), second.zero(n));
  ::unsetenv("DINI_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST(X0Bound, ClosedFormValues) {
  // direct substitution into the closed form, mpmath
  EXPECT_NEAR(x0_bound(-0.75), 0.3726779962499649494, 1e-15);
  EXPECT_NEAR(x0_bound(-0.9), 0.31269438398822861356, 1e-15);
  EXPECT_LT(x0_bound(-0.5 - 1e-6), 0.01);
  EXPECT_LT(x0_bound(-0.9), 0.5);
  EXPECT_THROW(x0_bound(-0.5), DomainError);
  EXPECT_THROW(x0_bound(-1.0), DomainError);
}

TEST(X0Bound, DominatesGroundStateZero) {
  for (int i = 0; i < 64; ++i) {
    const double nu = -1.0 + 1e-3 + (0.5 - 2e-3) * i / 63.0;
    const ZeroTable t = build_zero_table(SpectralParams::make(nu, 0.5), 1);
    EXPECT_LT(t.zero(0), x0_bound(nu)) << nu;
    EXPECT_LT(x0_bound(nu), 0.5) << nu;
  }
}
