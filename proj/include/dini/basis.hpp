#pragma once

// Orthonormal Fourier-Dini system psi_n^{nu,H} on (0,1) and the Jacobi
// trigonometric functions Phi_k^{alpha,beta}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "dini/errors.hpp"
#include "dini/numerics.hpp"
#include "dini/specfun.hpp"
#include "dini/zeros.hpp"

namespace dini {

class BasisSpec {
 public:
  explicit BasisSpec(ZeroTable table) : table_(std::move(table)) { fill_constants(0); }

  static BasisSpec build(const SpectralParams& p, int n_max, double tol = 1e-13) {
    return BasisSpec(build_zero_table(p, n_max, tol));
  }

  BasisSpec extended(int n_max) const {
    if (n_max <= this->n_max()) return *this;
    BasisSpec b = *this;
    b.table_ = extend_zero_table(table_, n_max);
    b.fill_constants(static_cast<int>(c_.size()));
    return b;
  }

  const SpectralParams& params() const { return table_.params(); }
  const ZeroTable& zeros() const { return table_; }
  int n_min() const { return table_.n_min(); }
  int n_max() const { return table_.n_max(); }

  double norm_const(int n) const { return c_.at(n - n_min()); }
  // Signed eigenvalue of the Dini operator for psi_n.
  double eigenvalue(int n) const { return table_.eigenvalue(n); }

  double psi(int n, double x) const {
    check_x(x);
    check_ground(n);
    const SpectralParams& p = params();
    const double z = table_.zero(n);
    if (n == 0) {
      if (p.regime == Regime::zero) return c_[0] * std::pow(x, p.nu + 0.5);
      return c_[0] * std::sqrt(x) * bessel_i(p.nu, z * x);
    }
    return norm_const(n) * std::sqrt(x) * bessel_j(p.nu, z * x);
  }

  // psi_n'(x) = c_n x^{-1/2} J_{nu,1/2}(z_n x), and the I analogue for n = 0.
  double dpsi(int n, double x) const {
    check_x(x);
    check_ground(n);
    const SpectralParams& p = params();
    const double z = table_.zero(n);
    if (n == 0) {
      if (p.regime == Regime::zero) return c_[0] * (p.nu + 0.5) * std::pow(x, p.nu - 0.5);
      const auto b = detail::bessel_i_pair(p.nu, z * x);
      return c_[0] / std::sqrt(x) * ((p.nu + 0.5) * b.v0 + z * x * b.v1);
    }
    const auto b = detail::bessel_j_pair(p.nu, z * x);
    return norm_const(n) / std::sqrt(x) * ((p.nu + 0.5) * b.v0 - z * x * b.v1);
  }

  // psi_n(x) for n = n_min .. n_last, written to out[n - n_min].
  void column(double x, int n_last, std::vector<double>& out) const {
    check_x(x);
    if (n_last > n_max()) throw IndexError("column: basis too short");
    out.resize(n_last - n_min() + 1);
    const SpectralParams& p = params();
    const double sx = std::sqrt(x);
    for (int n = n_min(); n <= n_last; ++n) {
      if (n == 0) {
        out[0] = psi(0, x);
        continue;
      }
      out[n - n_min()] = c_[n - n_min()] * sx * bessel_j(p.nu, table_.zero(n) * x);
    }
  }

 private:
  static void check_x(double x) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("basis functions are evaluated on (0,1]");
  }
  void check_ground(int n) const {
    if (n == 0 && params().regime == Regime::plus) {
      throw RegimeMismatch("psi_0 does not exist when nu + H > 0");
    }
  }

  void fill_constants(int from) {
    const SpectralParams& p = params();
    c_.resize(table_.n_max() - n_min() + 1);
    for (int i = from; i < static_cast<int>(c_.size()); ++i) {
      const int n = i + n_min();
      const double z = table_.zero(n);
      if (n == 0 && p.regime == Regime::zero) {
        c_[i] = std::sqrt(2.0 * (p.nu + 1.0));
      } else if (n == 0) {
        const double r = z * z + p.nu * p.nu - p.h * p.h;
        if (!(r > 0.0)) throw DomainError("normalizing constant of psi_0 is not real");
        c_[i] = std::numbers::sqrt2 / bessel_i(p.nu, z) * z / std::sqrt(r);
      } else {
        const double r = z * z - p.nu * p.nu + p.h * p.h;
        if (!(r > 0.0)) throw DomainError("normalizing constant of psi_n is not real");
        c_[i] = std::numbers::sqrt2 / std::abs(bessel_j(p.nu, z)) * z / std::sqrt(r);
      }
    }
  }

  ZeroTable table_;
  std::vector<double> c_;
};

inline double eval_psi(const BasisSpec& b, int n, double x) { return b.psi(n, x); }

// Quadrature for integrands behaving like x^a at 0 (a = nu + 1/2 for a bounded
// function against psi_n, a = 2 nu + 1 for products psi_n psi_m).
inline QuadratureRule default_rule(const SpectralParams& p, double endpoint_exponent,
                                   int uniform_points = 512) {
  (void)p;
  return graded_rule(endpoint_exponent, uniform_points);
}

inline QuadratureRule default_rule(const SpectralParams& p) {
  return default_rule(p, p.nu + 0.5);
}

// a_n = <f, psi_n> for n_min <= n <= n_last.
inline std::vector<double> dini_coefficients(const std::function<double(double)>& f,
                                             const BasisSpec& b, int n_last,
                                             const QuadratureRule& rule) {
  const int count = n_last - b.n_min() + 1;
  if (count <= 0) throw DomainError("dini_coefficients: empty index range");
  std::vector<KahanSum> acc(count);
  std::vector<double> col;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double wf = rule.weights[i] * f(x);
    if (wf == 0.0) continue;
    b.column(x, n_last, col);
    for (int j = 0; j < count; ++j) acc[j].add(wf * col[j]);
  }
  std::vector<double> a(count);
  for (int j = 0; j < count; ++j) a[j] = acc[j].value();
  return a;
}

inline std::vector<double> dini_coefficients(const std::function<double(double)>& f,
                                             const BasisSpec& b, int n_last) {
  return dini_coefficients(f, b, n_last, default_rule(b.params()));
}

// max |<psi_m, psi_n> - delta_mn| over n_min <= m, n <= n_last.
inline double gram_deviation(const BasisSpec& b, int n_last, int uniform_points = 512) {
  const QuadratureRule rule = default_rule(b.params(), 2.0 * b.params().nu + 1.0, uniform_points);
  const int count = n_last - b.n_min() + 1;
  std::vector<KahanSum> g(static_cast<std::size_t>(count) * count);
  std::vector<double> col;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    b.column(rule.nodes[i], n_last, col);
    for (int m = 0; m < count; ++m)
      for (int n = m; n < count; ++n) g[m * count + n].add(rule.weights[i] * col[m] * col[n]);
  }
  double dev = 0.0;
  for (int m = 0; m < count; ++m)
    for (int n = m; n < count; ++n)
      dev = std::max(dev, std::abs(g[m * count + n].value() - (m == n ? 1.0 : 0.0)));
  return dev;
}

// Coefficients of (shift + L)^power f given those of f (index 0 <-> n_min).
inline std::vector<double> apply_operator(const std::vector<double>& coeffs, const BasisSpec& b,
                                          double shift, double power) {
  const bool integer_power = power == std::floor(power) && power >= 0.0;
  std::vector<double> out(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const int n = b.n_min() + static_cast<int>(j);
    const double e = shift + b.eigenvalue(n);
    if (!integer_power && !(e > 0.0)) {
      throw SpectrumNotPositive("shift + eigenvalue is not positive at n = " + std::to_string(n));
    }
    out[j] = coeffs[j] * std::pow(e, power);
  }
  return out;
}

// ---- Jacobi trigonometric functions ----------------------------------------

class JacobiBasis {
 public:
  static JacobiBasis build(const JacobiParams& jp, int k_max) {
    if (k_max < 0) throw DomainError("JacobiBasis: k_max must be >= 0");
    JacobiBasis b;
    b.jp_ = jp;
    b.extend_to(k_max);
    return b;
  }

  JacobiBasis extended(int k_max) const {
    JacobiBasis b = *this;
    b.extend_to(k_max);
    return b;
  }

  const JacobiParams& params() const { return jp_; }
  int k_max() const { return static_cast<int>(c_.size()) - 1; }
  double norm_const(int k) const { return c_.at(k); }

  double eigenvalue(int k) const {
    const double s = k + 0.5 * (jp_.alpha + jp_.beta + 1.0);
    return std::numbers::pi * std::numbers::pi * s * s;
  }

  double phi(int k, double x) const {
    if (k < 0 || k > k_max()) throw IndexError("phi: index outside table");
    check_x(x);
    return norm_const(k) * weight(x) * jacobi_poly(k, jp_, std::cos(std::numbers::pi * x));
  }

  void column(double x, int k_last, std::vector<double>& out) const {
    check_x(x);
    if (k_last > k_max()) throw IndexError("column: Jacobi basis too short");
    out.resize(k_last + 1);
    const double u = std::cos(std::numbers::pi * x);
    const double w = weight(x);
    const double a = jp_.alpha, b = jp_.beta;
    double p0 = 1.0;
    out[0] = c_[0] * w;
    if (k_last == 0) return;
    double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (u - 1.0);
    out[1] = c_[1] * w * p1;
    const double a2b2 = (a - b) * (a + b);
    for (int n = 2; n <= k_last; ++n) {
      const double s = 2.0 * n + a + b;
      const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
      const double c2 = (s - 1.0) * (s * (s - 2.0) * u + a2b2);
      const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
      const double p2 = (c2 * p1 - c3 * p0) / c1;
      p0 = p1;
      p1 = p2;
      out[n] = c_[n] * w * p1;
    }
  }

  // (sin(pi x/2))^{alpha+1/2} (cos(pi x/2))^{beta+1/2}
  double weight(double x) const {
    const double h = 0.5 * std::numbers::pi * x;
    return std::pow(std::sin(h), jp_.alpha + 0.5) * std::pow(std::cos(h), jp_.beta + 0.5);
  }

 private:
  static void check_x(double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("Jacobi functions are evaluated on (0,1)");
  }

  void extend_to(int k_max) {
    const double a = jp_.alpha, b = jp_.beta, pi = std::numbers::pi;
    int k = static_cast<int>(c_.size());
    for (; k <= k_max; ++k) {
      double c2;
      if (k == 0) {
        c2 = pi * std::tgamma(a + b + 2.0) / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0));
      } else if (k == 1) {
        c2 = pi * (a + b + 3.0) * std::tgamma(a + b + 2.0) /
             (std::tgamma(a + 2.0) * std::tgamma(b + 2.0));
      } else {
        const double prev = c_[k - 1] * c_[k - 1];
        c2 = prev * (2.0 * k + a + b + 1.0) * (k + a + b) * k /
             ((2.0 * k + a + b - 1.0) * (k + a) * (k + b));
      }
      c_.push_back(std::sqrt(c2));
    }
  }

  JacobiParams jp_;
  std::vector<double> c_;
};

inline double eval_phi(const JacobiBasis& b, int k, double x) { return b.phi(k, x); }

}  // namespace dini
