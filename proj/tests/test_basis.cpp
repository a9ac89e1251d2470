#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dini/basis.hpp"

using namespace dini;
using std::numbers::pi;

namespace {

// Rule on (0,1) graded at both ends: exponent a at 0, b at 1.
QuadratureRule two_sided_rule(double a, double b) {
  QuadratureRule out;
  const QuadratureRule left = graded_rule(a, 512);
  const QuadratureRule right = graded_rule(b, 512);
  for (std::size_t i = 0; i < left.size(); ++i) {
    out.nodes.push_back(0.5 * left.nodes[i]);
    out.weights.push_back(0.5 * left.weights[i]);
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    out.nodes.push_back(1.0 - 0.5 * right.nodes[i]);
    out.weights.push_back(0.5 * right.weights[i]);
  }
  return out;
}

}  // namespace

TEST(Psi, HalfIntegerClosedForms) {
  const BasisSpec a = BasisSpec::build(SpectralParams::make(-0.5, 0.5), 30);
  const BasisSpec b = BasisSpec::build(SpectralParams::make(0.5, 0.5), 30);
  EXPECT_NEAR(a.psi(0, 0.37), 1.0, 1e-14);
  EXPECT_NEAR(a.psi(3, 0.5), 0.0, 1e-13);
  // orthonormal form carries sqrt(2)
  EXPECT_NEAR(b.psi(2, 0.5), 1.0, 1e-13);
  for (int n = 1; n <= 30; ++n) {
    for (double x : {0.01, 0.2, 0.5, 0.77, 0.999}) {
      EXPECT_NEAR(a.psi(n, x), std::sqrt(2.0) * std::cos(pi * n * x), 1e-12);
      EXPECT_NEAR(b.psi(n, x), std::sqrt(2.0) * std::sin(pi * (n - 0.5) * x), 1e-12);
    }
  }
}

TEST(Psi, GroundStateDispatch) {
  const BasisSpec zero = BasisSpec::build(SpectralParams::make(0.3, -0.3), 5);
  EXPECT_NEAR(zero.psi(0, 0.4), std::sqrt(2.6) * std::pow(0.4, 0.8), 1e-14);
  const BasisSpec minus = BasisSpec::build(SpectralParams::make(-0.75, 0.5), 5);
  EXPECT_GT(minus.psi(0, 0.4), 0.0);
  EXPECT_LT(minus.eigenvalue(0), 0.0);
  const BasisSpec plus = BasisSpec::build(SpectralParams::make(0.0, 0.5), 5);
  EXPECT_THROW(plus.psi(0, 0.4), RegimeMismatch);
  EXPECT_THROW(plus.psi(6, 0.4), IndexError);
  EXPECT_THROW(plus.psi(1, 0.0), DomainError);
}

TEST(Psi, ConstantsPositiveAndEigenvaluesIncreasing) {
  for (double nu : {-0.9, -0.5, 0.0, 2.0}) {
    for (double h : {-1.0, 0.5, 2.0}) {
      const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, h), 30);
      for (int n = b.n_min(); n <= b.n_max(); ++n) {
        EXPECT_GT(b.norm_const(n), 0.0);
        if (n > b.n_min()) {
          EXPECT_GT(b.eigenvalue(n), b.eigenvalue(n - 1));
        }
      }
    }
  }
}

class GramTest : public testing::TestWithParam<std::pair<double, double>> {};

TEST_P(GramTest, OrthonormalUpToForty) {
  const auto [nu, h] = GetParam();
  const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, h), 40);
  EXPECT_LE(gram_deviation(b, 40), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Params, GramTest,
                         testing::Values(std::pair{-0.9, 0.5}, std::pair{-0.5, 0.5},
                                         std::pair{0.0, 0.5}, std::pair{0.5, 0.5},
                                         std::pair{1.5, 0.5}, std::pair{3.0, 0.5},
                                         std::pair{-0.9, -1.0}, std::pair{0.0, 0.0},
                                         std::pair{1.5, 2.0}, std::pair{-0.75, -1.0}));

TEST(Psi, EigenRelationByFiniteDifferences) {
  const double h = 1e-4;
  for (auto [nu, hh] : {std::pair{-0.75, 0.5}, std::pair{0.0, 2.0}, std::pair{1.5, -1.0}}) {
    const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, hh), 6);
    for (int n = b.n_min(); n <= 6; ++n) {
      for (double x : {0.15, 0.4, 0.8}) {
        const double f = b.psi(n, x);
        const double d2 = (b.psi(n, x + h) - 2 * f + b.psi(n, x - h)) / (h * h);
        const double lhs = d2 + (0.25 - nu * nu) / (x * x) * f;
        const double rhs = -b.eigenvalue(n) * f;
        EXPECT_NEAR(lhs, rhs, 1e-5 * std::max(1.0, std::abs(b.eigenvalue(n))) * b.norm_const(n))
            << nu << " " << hh << " n=" << n << " x=" << x;
      }
    }
  }
}

TEST(Psi, RobinConditionAtOne) {
  for (auto [nu, h] : {std::pair{-0.75, 0.5}, std::pair{0.0, 2.0}, std::pair{1.5, -1.0},
                       std::pair{0.3, -0.3}}) {
    const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, h), 20);
    for (int n = b.n_min(); n <= 20; ++n) {
      EXPECT_NEAR((h - 0.5) * b.psi(n, 1.0) + b.dpsi(n, 1.0), 0.0, 1e-8 * (1.0 + b.zeros().zero(n)))
          << nu << " " << h << " n=" << n;
    }
  }
}

TEST(Psi, DerivativeMatchesFiniteDifferences) {
  const BasisSpec b = BasisSpec::build(SpectralParams::make(-0.75, 0.5), 5);
  const double h = 1e-6;
  for (int n = 0; n <= 5; ++n) {
    for (double x : {0.2, 0.6}) {
      EXPECT_NEAR(b.dpsi(n, x), (b.psi(n, x + h) - b.psi(n, x - h)) / (2 * h), 1e-6 * (1 + n * n));
    }
  }
}

TEST(Coefficients, OfABasisFunctionIsKronecker) {
  const BasisSpec b = BasisSpec::build(SpectralParams::make(-0.9, 2.0), 20);
  const auto a = dini_coefficients([&](double x) { return b.psi(2, x); }, b, 20,
                                   default_rule(b.params(), 2 * b.params().nu + 1));
  for (int n = b.n_min(); n <= 20; ++n) {
    EXPECT_NEAR(a[n - b.n_min()], n == 2 ? 1.0 : 0.0, 1e-9) << n;
  }
}

TEST(Coefficients, OfZeroAndOfConstant) {
  const BasisSpec b = BasisSpec::build(SpectralParams::make(-0.5, 0.5), 20);
  for (double v : dini_coefficients([](double) { return 0.0; }, b, 20)) EXPECT_EQ(v, 0.0);
  const auto a = dini_coefficients([](double) { return 1.0; }, b, 20);
  EXPECT_NEAR(a[0], 1.0, 1e-9);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_NEAR(a[i], 0.0, 1e-9);
}

TEST(Coefficients, Parseval) {
  auto bump = [](double x) {
    const double u = (x - 0.5) / 0.3;
    return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
  };
  for (auto [nu, h] : {std::pair{-0.75, 0.5}, std::pair{0.0, -1.0}, std::pair{2.0, 0.5}}) {
    const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, h), 200);
    const QuadratureRule rule = default_rule(b.params(), 0.0, 4096);
    const double norm2 = rule.integrate([&](double x) { return bump(x) * bump(x); });
    double sum = 0.0;
    for (double v : dini_coefficients(bump, b, 200, rule)) sum += v * v;
    EXPECT_NEAR(sum, norm2, 1e-6) << nu << " " << h;
  }
}

TEST(ApplyOperator, EigenvalueScaling) {
  const BasisSpec b = BasisSpec::build(SpectralParams::make(0.0, 0.5), 10);
  std::vector<double> c(10, 0.0);
  c[0] = 1.0;  // psi_1
  const auto out = apply_operator(c, b, 0.0, 1.0);
  EXPECT_NEAR(out[0], b.zeros().zero(1) * b.zeros().zero(1), 1e-12);
  for (std::size_t i = 1; i < out.size(); ++i) EXPECT_EQ(out[i], 0.0);
  std::vector<double> r{0.3, -1.0, 2.5};
  EXPECT_EQ(apply_operator(r, b, 0.0, 0.0), r);
}

TEST(ApplyOperator, NegativePowerNeedsPositiveSpectrum) {
  const BasisSpec b = BasisSpec::build(SpectralParams::make(-0.75, 0.5), 10);
  std::vector<double> c(11, 1.0);
  EXPECT_THROW(apply_operator(c, b, 0.0, -1.0), SpectrumNotPositive);
  EXPECT_NO_THROW(apply_operator(c, b, 1.0, -1.0));
  EXPECT_NO_THROW(apply_operator(c, b, 0.0, 2.0));
}

TEST(Jacobi, ChebyshevCaseIsConstantOne) {
  const JacobiBasis j = JacobiBasis::build({-0.5, -0.5}, 5);
  EXPECT_NEAR(j.norm_const(0), 1.0, 1e-15);
  for (double x : {0.1, 0.5, 0.93}) EXPECT_NEAR(j.phi(0, x), 1.0, 1e-15);
  // Phi_k = sqrt(2) cos(pi k x) in this case
  for (int k = 1; k <= 5; ++k) EXPECT_NEAR(j.phi(k, 0.3), std::sqrt(2.0) * std::cos(pi * k * 0.3), 1e-13);
}

TEST(Jacobi, GroundStateNormalization) {
  const JacobiBasis j = JacobiBasis::build({0.5, -0.5}, 2);
  EXPECT_NEAR(j.phi(0, 0.5), j.norm_const(0) * std::sin(pi / 4), 1e-15);
  const QuadratureRule q = gauss_legendre(512);
  EXPECT_NEAR(q.integrate([&](double x) { return j.phi(0, x) * j.phi(0, x); }), 1.0, 1e-12);
}

TEST(Jacobi, OrthonormalUpToThirty) {
  for (auto [a, b] : {std::pair{-0.5, -0.5}, std::pair{0.5, -0.5}, std::pair{0.7, -0.5},
                      std::pair{-0.75, 0.3}, std::pair{2.0, 1.0}}) {
    const JacobiBasis j = JacobiBasis::build({a, b}, 30);
    const QuadratureRule q = two_sided_rule(2 * a + 1, 2 * b + 1);
    std::vector<std::vector<double>> g(31, std::vector<double>(31, 0.0));
    std::vector<double> col;
    for (std::size_t i = 0; i < q.size(); ++i) {
      j.column(q.nodes[i], 30, col);
      for (int m = 0; m <= 30; ++m)
        for (int n = 0; n <= 30; ++n) g[m][n] += q.weights[i] * col[m] * col[n];
    }
    for (int m = 0; m <= 30; ++m)
      for (int n = 0; n <= 30; ++n) EXPECT_NEAR(g[m][n], m == n ? 1.0 : 0.0, 1e-9) << a << " " << b;
  }
}

TEST(Jacobi, ColumnMatchesPointwise) {
  const JacobiBasis j = JacobiBasis::build({0.7, -0.5}, 12);
  std::vector<double> col;
  j.column(0.31, 12, col);
  for (int k = 0; k <= 12; ++k) EXPECT_NEAR(col[k], j.phi(k, 0.31), 1e-12 * std::max(1.0, std::abs(col[k])));
  EXPECT_THROW(j.phi(13, 0.3), IndexError);
  EXPECT_THROW(j.phi(1, 1.0), DomainError);
}
