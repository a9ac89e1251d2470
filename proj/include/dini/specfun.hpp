#pragma once

// Bessel functions of real order, the boundary combinations J_{nu,H} and
// I_{nu,H}, Jacobi polynomials and the cross Wronskian used in the zero
// comparison arguments.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dini/errors.hpp"
#include "dini/numerics.hpp"

namespace dini {

enum class Regime { plus, zero, minus };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::plus: return "plus";
    case Regime::zero: return "zero";
    case Regime::minus: return "minus";
  }
  return "?";
}

// Order nu > -1 and Robin parameter H; the regime is the sign of nu + H.
struct SpectralParams {
  double nu = 0.0;
  double h = 0.5;
  Regime regime = Regime::plus;

  static constexpr double zero_band = 1e-14;

  static SpectralParams make(double nu, double h) {
    if (!(nu > -1.0) || !std::isfinite(nu)) throw DomainError("order must satisfy nu > -1");
    if (!std::isfinite(h)) throw DomainError("H must be finite");
    SpectralParams p;
    p.nu = nu;
    p.h = h;
    const double s = nu + h;
    p.regime = std::abs(s) <= zero_band ? Regime::zero : (s > 0 ? Regime::plus : Regime::minus);
    return p;
  }
};

struct JacobiParams {
  double alpha = -0.5;
  double beta = -0.5;

  static JacobiParams make(double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
      throw DomainError("Jacobi parameters must exceed -1");
    }
    return {alpha, beta};
  }
};

inline double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma: pole at " + std::to_string(x));
  }
  return std::tgamma(x);
}

namespace detail {

inline constexpr double pi = std::numbers::pi;

struct BesselPair {
  double v0;  // order nu
  double v1;  // order nu + 1
};

// Ascending series for J (sign = -1) or I (sign = +1) of orders nu and nu+1.
inline BesselPair bessel_series(double nu, double x, int sign) {
  const double q = 0.25 * x * x * sign;
  auto sum = [&](double order) {
    KahanSum s;
    double term = 1.0;
    s.add(term);
    for (int k = 1; k < 5000; ++k) {
      term *= q / (k * (k + order));
      s.add(term);
      if (k > std::abs(q) && std::abs(term) <= 1e-17 * std::abs(s.value())) break;
    }
    return s.value();
  };
  const double lx = std::log(0.5 * x);
  const double p0 = std::exp(nu * lx - std::lgamma(nu + 1.0));
  const double p1 = p0 * 0.5 * x / (nu + 1.0);
  return {p0 * sum(nu), p1 * sum(nu + 1.0)};
}

// Large-argument expansion sqrt(2/(pi x)) (P cos w - Q sin w). Returns false if
// the asymptotic series cannot reach double precision at this argument.
inline bool bessel_j_hankel(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  bool ok = false;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double a = std::abs(term);
    if (a == 0.0) {
      ok = true;
      break;
    }
    if (a > prev) break;
    prev = a;
    // (-1)^floor(k/2) pattern: k=1 +Q, k=2 -P, k=3 -Q, k=4 +P, ...
    const int m = k % 4;
    if (m == 1) q += term;
    else if (m == 2) p -= term;
    else if (m == 3) q -= term;
    else p += term;
    if (a <= 1e-17) {
      ok = true;
      break;
    }
  }
  if (!ok) return false;
  const double phi = (0.5 * nu + 0.25) * pi;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double cw = cx * cp + sx * sp;
  const double sw = sx * cp - cx * sp;
  out = std::sqrt(2.0 / (pi * x)) * (p * cw - q * sw);
  return true;
}

// Backward recurrence over orders nu + k, normalized by
// (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x).
inline BesselPair bessel_j_miller(double nu, double x) {
  const int K = 2 * static_cast<int>(std::ceil(0.5 * (x + 12.0 * std::cbrt(x) + 30.0)));
  const int mmax = K / 2;
  // d_m for m = mmax..0 computed forward then consumed backward
  std::vector<double> d(mmax + 1);
  d[0] = 1.0;
  if (mmax >= 1) d[1] = nu + 2.0;
  for (int m = 2; m <= mmax; ++m) {
    d[m] = d[m - 1] * (nu + 2.0 * m) * (nu + m - 1.0) / ((nu + 2.0 * m - 2.0) * m);
  }
  double r_next = 0.0, r = 1e-30;
  double norm = 0.0;
  double r0 = 0.0, r1 = 0.0;
  for (int k = K; k >= 0; --k) {
    if (k % 2 == 0) norm += d[k / 2] * r;
    if (k == 1) r1 = r;
    if (k == 0) {
      r0 = r;
      break;
    }
    const double rp = 2.0 * (nu + k) / x * r - r_next;
    r_next = r;
    r = rp;
    if (std::abs(r) > 1e250) {
      r *= 1e-250;
      r_next *= 1e-250;
      norm *= 1e-250;
      r1 *= 1e-250;
    }
  }
  const double pref = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0)) / norm;
  return {pref * r0, pref * r1};
}

inline bool hankel_region(double nu, double x) { return x >= 25.0 && x >= 2.0 * nu * nu; }

inline BesselPair bessel_j_pair(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("bessel_j: order must exceed -1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: argument must be positive");
  if (x <= 2.0 || x * x <= 2.0 * (nu + 1.0)) return bessel_series(nu, x, -1);
  if (hankel_region(nu, x)) {
    double a, b;
    if (bessel_j_hankel(nu, x, a) && bessel_j_hankel(nu + 1.0, x, b)) return {a, b};
  }
  return bessel_j_miller(nu, x);
}

inline bool bessel_i_asymptotic(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  KahanSum s;
  s.add(1.0);
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * x);
    const double a = std::abs(term);
    if (a > prev) return false;
    prev = a;
    s.add(term);
    if (a <= 1e-17) {
      out = std::exp(x) / std::sqrt(2.0 * pi * x) * s.value();
      return true;
    }
  }
  return false;
}

inline BesselPair bessel_i_pair(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("bessel_i: order must exceed -1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_i: argument must be positive");
  if (x > 700.0) throw Overflow("bessel_i: argument above 700 overflows");
  if (x > 30.0 && x >= 2.0 * (nu + 1.0) * (nu + 1.0)) {
    double a, b;
    if (bessel_i_asymptotic(nu, x, a) && bessel_i_asymptotic(nu + 1.0, x, b)) return {a, b};
  }
  return bessel_series(nu, x, +1);
}

}  // namespace detail

inline double bessel_j(double nu, double x) { return detail::bessel_j_pair(nu, x).v0; }

inline double bessel_i(double nu, double x) { return detail::bessel_i_pair(nu, x).v0; }

// J_{nu,H}(x) = (H + nu) J_nu(x) - x J_{nu+1}(x)
inline double bessel_jh(const SpectralParams& p, double x) {
  const auto b = detail::bessel_j_pair(p.nu, x);
  return (p.h + p.nu) * b.v0 - x * b.v1;
}

// I_{nu,H}(x) = (H + nu) I_nu(x) + x I_{nu+1}(x)
inline double bessel_ih(const SpectralParams& p, double x) {
  const auto b = detail::bessel_i_pair(p.nu, x);
  return (p.h + p.nu) * b.v0 + x * b.v1;
}

// Jacobi polynomial P_k^{alpha,beta}(u) by the three-term recurrence.
inline double jacobi_poly(int k, const JacobiParams& jp, double u) {
  if (k < 0 || k > 100000) throw DomainError("jacobi_poly: degree out of range");
  if (!(u >= -1.0 && u <= 1.0)) throw DomainError("jacobi_poly: argument outside [-1,1]");
  const double a = jp.alpha, b = jp.beta;
  double p0 = 1.0;
  if (k == 0) return p0;
  double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (u - 1.0);
  const double a2b2 = (a - b) * (a + b);
  for (int n = 2; n <= k; ++n) {
    const double s = 2.0 * n + a + b;
    const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * u + a2b2);
    const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// d/du P_k^{alpha,beta}(u) = (k + alpha + beta + 1)/2 P_{k-1}^{alpha+1,beta+1}(u)
inline double jacobi_poly_derivative(int k, const JacobiParams& jp, double u) {
  if (k == 0) return 0.0;
  return 0.5 * (k + jp.alpha + jp.beta + 1.0) *
         jacobi_poly(k - 1, {jp.alpha + 1.0, jp.beta + 1.0}, u);
}

// Cross Wronskian of x -> J_nu(xi x) and x -> J_alpha(eta x) in the form used
// for zero comparison:
//   (alpha - nu) J_nu(xi x) J_alpha(eta x)
//     + x [xi J_{nu+1}(xi x) J_alpha(eta x) - eta J_nu(xi x) J_{alpha+1}(eta x)]
inline double wronskian(double nu, double alpha, double xi, double eta, double x) {
  if (xi == eta) throw DomainError("wronskian: xi and eta must differ");
  const auto a = detail::bessel_j_pair(nu, xi * x);
  const auto b = detail::bessel_j_pair(alpha, eta * x);
  return (alpha - nu) * a.v0 * b.v0 + x * (xi * a.v1 * b.v0 - eta * a.v0 * b.v1);
}

}  // namespace dini
