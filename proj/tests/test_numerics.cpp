#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dini/numerics.hpp"
#include "dini/specfun.hpp"

using namespace dini;

TEST(KahanSum, RecoversSmallTermsNextToLargeOnes) {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-25);
}

TEST(RefineRoot, SquareRootOfTwo) {
  auto r = refine_root([](double x) { return x * x - 2.0; }, Bracket{1.0, 2.0, -1, 1}, 1e-12);
  EXPECT_NEAR(r.root, std::numbers::sqrt2, 1e-12);
  EXPECT_LE(r.bracket.width(), 1e-12);
}

TEST(RefineRoot, CosineHalfPi) {
  auto r = refine_root([](double x) { return std::cos(x); }, Bracket{1.0, 2.0, 1, -1}, 1e-12);
  EXPECT_NEAR(r.root, std::numbers::pi / 2, 1e-12);
}

TEST(RefineRoot, UsesDerivativeWhenGiven) {
  auto f = [](double x) { return std::pair{x * x * x - 3.0, 3.0 * x * x}; };
  auto r = refine_root(f, Bracket{1.0, 2.0, -1, 1}, 1e-13);
  EXPECT_NEAR(r.root, std::cbrt(3.0), 1e-13);
  EXPECT_LT(r.iterations, 20);
}

TEST(RefineRoot, FirstDiniZeroMatchesBisectionGolden) {
  // plain bisection oracle at 1e-12 (mpmath, 30 digits), frozen
  const SpectralParams p = SpectralParams::make(0.0, 0.5);
  auto f = [&](double x) { return bessel_jh(p, x); };
  auto r = refine_root(f, Bracket{0.1, 2.4048, 1, -1}, 1e-12);
  EXPECT_NEAR(r.root, 0.94077056394973735365, 1e-12);
}

TEST(RefineRoot, RejectsBracketWithoutSignChange) {
  EXPECT_THROW(refine_root([](double x) { return x * x + 1.0; }, Bracket{-1.0, 1.0, 1, 1}, 1e-12),
               NoSignChange);
}

TEST(GaussLegendre, OnePointIsMidpoint) {
  const QuadratureRule q = gauss_legendre(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q.nodes[0], 0.5);
  EXPECT_DOUBLE_EQ(q.weights[0], 1.0);
}

TEST(GaussLegendre, TwoPointNodes) {
  const QuadratureRule q = gauss_legendre(2);
  const double d = 0.5 / std::sqrt(3.0);
  EXPECT_NEAR(q.nodes[0], 0.5 - d, 1e-15);
  EXPECT_NEAR(q.nodes[1], 0.5 + d, 1e-15);
  EXPECT_NEAR(q.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(q.weights[1], 0.5, 1e-15);
  EXPECT_NEAR(q.integrate([](double x) { return x * x * x; }), 0.25, 1e-15);
}

TEST(GaussLegendre, HighOrderIsExact) {
  for (int n : {64, 512, 2048}) {
    const QuadratureRule q = gauss_legendre(n);
    double w = 0.0;
    for (double v : q.weights) w += v;
    EXPECT_NEAR(w, 1.0, 1e-13) << n;
    EXPECT_NEAR(q.integrate([](double x) { return std::cos(40.0 * x); }), std::sin(40.0) / 40.0, 1e-13)
        << n;
  }
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(GradedRule, IntegratesEndpointSingularity) {
  for (double a : {-0.8, -0.3, 0.0, 0.5, 2.0, 7.0}) {
    // int_0^1 x^a cos x dx by its power series
    double exact = 0.0, term = 1.0;
    for (int k = 0; k < 30; ++k) {
      exact += term / (a + 2 * k + 1);
      term *= -1.0 / ((2 * k + 1) * (2 * k + 2));
    }
    const QuadratureRule q = graded_rule(a);
    EXPECT_NEAR(q.integrate([a](double x) { return std::pow(x, a) * std::cos(x); }), exact, 1e-13)
        << a;
  }
}

TEST(IntegrateHalfline, Exponential) {
  auto r = integrate_halfline([](double t) { return std::exp(-t); }, 1e-10);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(IntegrateHalfline, GammaTwo) {
  auto r = integrate_halfline([](double t) { return t * std::exp(-t); }, 1e-10);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(IntegrateHalfline, GaussianMatchesTrapezoidOracle) {
  // high-resolution trapezoid on [0, 12]: exponentially accurate for e^{-t^2}
  const int n = 200000;
  const double h = 12.0 / n;
  double trap = 0.5;
  for (int i = 1; i < n; ++i) trap += std::exp(-(i * h) * (i * h));
  trap *= h;
  auto r = integrate_halfline([](double t) { return std::exp(-t * t); }, 1e-10);
  EXPECT_NEAR(r.value, trap, 1e-10);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi) / 2, 1e-10);
}

TEST(IntegrateHalfline, IntegrableSingularityAtZero) {
  auto r = integrate_halfline([](double t) { return std::exp(-t) / std::sqrt(t); }, 1e-9);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-8);
}

TEST(IntegrateHalfline, NonDecayingTailIsReported) {
  EXPECT_THROW(integrate_halfline([](double) { return 1.0; }, 1e-8), TailNotDecaying);
}
