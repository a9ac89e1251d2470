#pragma once

// Positive zeros of J_{nu,H} (Dini zeros), the imaginary zero of the minus
// regime through I_{nu,H}, and a CSV cache for completed tables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dini/errors.hpp"
#include "dini/numerics.hpp"
#include "dini/specfun.hpp"

namespace dini {

class ZeroTable;
ZeroTable build_zero_table(const SpectralParams& p, int n_max, double tol);
ZeroTable extend_zero_table(const ZeroTable& t, int n_max);
ZeroTable read_zero_table_csv(std::istream& is);

// Immutable table of z_n for n_min <= n <= n_max. n_min is 1 in the plus
// regime and 0 otherwise (z_0 = 0 in the zero regime, z_0 = imaginary zero
// modulus in the minus regime).
class ZeroTable {
 public:
  const SpectralParams& params() const { return params_; }
  int n_min() const { return params_.regime == Regime::plus ? 1 : 0; }
  int n_max() const { return n_min() + static_cast<int>(zeros_.size()) - 1; }
  double tol() const { return tol_; }

  double zero(int n) const {
    check(n);
    return zeros_[n - n_min()];
  }
  const Bracket& bracket(int n) const {
    check(n);
    return brackets_[n - n_min()];
  }
  // Signed eigenvalue: -z_0^2 for the minus-regime ground state, z_n^2 otherwise.
  double eigenvalue(int n) const {
    const double z = zero(n);
    return (n == 0 && params_.regime == Regime::minus) ? -z * z : z * z;
  }
  // Zeros of J_nu used as interlacing cells; index k-1 holds j_{nu,k}.
  const std::vector<double>& bessel_zeros() const { return jzeros_; }

  // max over n >= 1 of |z_n - pi n|
  double azer_constant() const {
    double c = 0.0;
    for (int n = std::max(1, n_min()); n <= n_max(); ++n) {
      c = std::max(c, std::abs(zero(n) - std::numbers::pi * n));
    }
    return c;
  }
  // c with z_n >= pi (n - c), used for tail bounds beyond the table. n - z_n/pi
  // tends to 3/4 - nu/2 (one less when psi_0 exists), in most cases from below,
  // so the limit is included alongside the tabulated maximum.
  double lower_shift() const {
    double c = 0.75 - 0.5 * params_.nu - (params_.regime == Regime::plus ? 0.0 : 1.0);
    for (int n = std::max(1, n_min()); n <= n_max(); ++n) {
      c = std::max(c, n - zero(n) / std::numbers::pi);
    }
    return c;
  }

 private:
  friend ZeroTable build_zero_table(const SpectralParams&, int, double);
  friend ZeroTable extend_zero_table(const ZeroTable&, int);
  friend ZeroTable read_zero_table_csv(std::istream&);

  void check(int n) const {
    if (n < n_min() || n > n_max()) {
      throw IndexError("zero index " + std::to_string(n) + " outside [" +
                       std::to_string(n_min()) + ", " + std::to_string(n_max()) + "]");
    }
  }

  SpectralParams params_;
  double tol_ = 1e-13;
  std::vector<double> zeros_;
  std::vector<Bracket> brackets_;
  std::vector<double> jzeros_;
};

namespace detail {

inline std::pair<double, double> j_value_slope(double nu, double x) {
  const auto b = bessel_j_pair(nu, x);
  return {b.v0, nu / x * b.v0 - b.v1};
}

inline std::pair<double, double> jh_value_slope(const SpectralParams& p, double x) {
  const auto b = bessel_j_pair(p.nu, x);
  const double s = p.h + p.nu;
  return {s * b.v0 - x * b.v1, b.v0 * (s * p.nu / x - x) - p.h * b.v1};
}

inline std::pair<double, double> ih_value_slope(const SpectralParams& p, double x) {
  const auto b = bessel_i_pair(p.nu, x);
  const double s = p.h + p.nu;
  return {s * b.v0 + x * b.v1, b.v0 * (s * p.nu / x + x) + p.h * b.v1};
}

inline double scaled_tol(double tol, double x) { return tol * std::max(1.0, std::abs(x)); }

// McMahon expansion for the k-th positive zero of J_nu.
inline double mcmahon(double nu, int k) {
  const double mu = 4.0 * nu * nu;
  const double b = (k + 0.5 * nu - 0.25) * pi;
  const double e = 8.0 * b;
  return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

// Next zero of J_nu after `prev` (prev = 0 for the first zero).
inline double next_bessel_zero(double nu, int k, double prev, double tol) {
  auto f = [nu](double x) { return j_value_slope(nu, x); };
  const double g = mcmahon(nu, k);
  const double d = 0.3;
  auto sign_at = [&](double x) { return sign_of(bessel_j(nu, x)); };
  Bracket b;
  bool found = false;
  if (g - d > prev + 0.5 && g + d < prev + 6.0) {
    const int sl = sign_at(g - d), sh = sign_at(g + d);
    // J_nu has sign (-1)^(k-1) before its k-th zero
    const int expected = (k % 2 == 1) ? 1 : -1;
    if (sl * sh < 0 && sl == expected) {
      b = {g - d, g + d, sl, sh};
      found = true;
    }
  }
  if (!found) {
    const double step = 0.05;
    double a = (prev > 0.0) ? prev + 1e-3 : 1e-6;
    int sa = sign_at(a);
    for (int i = 0; i < 400 && !found; ++i) {
      const double c = a + step;
      const int sc = sign_at(c);
      if (sa * sc < 0) {
        b = {a, c, sa, sc};
        found = true;
      }
      a = c;
      sa = sc;
    }
  }
  if (!found) {
    throw BracketScanFailure("no zero of J_nu found after " + std::to_string(prev));
  }
  const double mid = 0.5 * (b.lo + b.hi);
  return refine_root(f, b, scaled_tol(tol, mid)).root;
}

inline void append_bessel_zeros(double nu, std::vector<double>& jz, int count, double tol) {
  while (static_cast<int>(jz.size()) < count) {
    const int k = static_cast<int>(jz.size()) + 1;
    const double prev = jz.empty() ? 0.0 : jz.back();
    jz.push_back(next_bessel_zero(nu, k, prev, tol));
  }
}

inline RootResult dini_zero_in_cell(const SpectralParams& p, double lo, double hi, double tol) {
  auto f = [&p](double x) { return jh_value_slope(p, x); };
  const int sl = sign_of(f(lo).first), sh = sign_of(f(hi).first);
  if (sl * sh >= 0) {
    throw BracketScanFailure("J_{nu,H} has no sign change on interlacing cell [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  // scaled by the cell's left end, which does not exceed the zero
  return refine_root(f, {lo, hi, sl, sh}, scaled_tol(tol, lo));
}

// Left end of the first cell in the plus regime: a point where J_{nu,H} is
// still positive.
inline double first_cell_start(const SpectralParams& p, double j1) {
  const double s = p.h + p.nu;
  double e = std::min(0.5 * j1, 0.5 * std::sqrt(s * (p.nu + 1.0)));
  for (int i = 0; i < 200; ++i) {
    if (e > 0.0 && jh_value_slope(p, e).first > 0.0) return e;
    e *= 0.5;
  }
  throw BracketScanFailure("could not start the first interlacing cell");
}

inline RootResult imaginary_zero(const SpectralParams& p, double tol) {
  auto f = [&p](double x) { return ih_value_slope(p, x); };
  double lo = 1e-8;
  int i = 0;
  while (f(lo).first >= 0.0) {
    lo *= 0.5;
    if (++i > 200) throw BracketScanFailure("I_{nu,H} is not negative near 0");
  }
  double hi = 1.0;
  for (int k = 0; f(hi).first <= 0.0; ++k) {
    if (k >= 9) throw BracketScanFailure("I_{nu,H} has no sign change below 2^9");
    hi *= 2.0;
  }
  return refine_root(f, {lo, hi, -1, 1}, scaled_tol(tol, lo));
}

inline void append_dini_zeros(const SpectralParams& p, std::vector<double>& jz,
                              std::vector<double>& zeros, std::vector<Bracket>& brackets,
                              int first_n, int n_max, double tol) {
  const bool plus = p.regime == Regime::plus;
  // plus regime: z_n in (j_{n-1}, j_n); otherwise z_n in (j_n, j_{n+1})
  append_bessel_zeros(p.nu, jz, plus ? n_max : n_max + 1, tol);
  for (int n = first_n; n <= n_max; ++n) {
    double lo, hi;
    if (plus) {
      lo = (n == 1) ? first_cell_start(p, jz[0]) : jz[n - 2];
      hi = jz[n - 1];
    } else {
      lo = jz[n - 1];
      hi = jz[n];
    }
    const RootResult r = dini_zero_in_cell(p, lo, hi, tol);
    zeros.push_back(r.root);
    brackets.push_back(r.bracket);
  }
}

}  // namespace detail

inline ZeroTable build_zero_table(const SpectralParams& p, int n_max, double tol = 1e-13) {
  if (n_max < 1) throw DomainError("zero table needs n_max >= 1");
  if (!(tol >= 1e-13)) throw DomainError("zero tolerance must be >= 1e-13");
  ZeroTable t;
  t.params_ = p;
  t.tol_ = tol;
  if (p.regime == Regime::zero) {
    t.zeros_.push_back(0.0);
    t.brackets_.push_back({0.0, 0.0, 0, 0});
  } else if (p.regime == Regime::minus) {
    const RootResult r = detail::imaginary_zero(p, tol);
    t.zeros_.push_back(r.root);
    t.brackets_.push_back(r.bracket);
  }
  detail::append_dini_zeros(p, t.jzeros_, t.zeros_, t.brackets_, 1, n_max, tol);
  if (p.regime == Regime::minus) {
    // no positive zero may sit below j_1 when nu + H < 0
    const double e = 1e-6 * t.jzeros_[0];
    if (bessel_jh(p, e) * bessel_jh(p, t.jzeros_[0]) < 0.0) {
      throw RegimeMismatch("sign change below j_1 although nu + H < 0");
    }
  }
  return t;
}

inline ZeroTable extend_zero_table(const ZeroTable& t, int n_max) {
  if (n_max <= t.n_max()) return t;
  ZeroTable u = t;
  detail::append_dini_zeros(u.params_, u.jzeros_, u.zeros_, u.brackets_, t.n_max() + 1, n_max,
                            u.tol_);
  return u;
}

// Upper bound for z_0 when H = 1/2 and nu in (-1, -1/2).
inline double x0_bound(double nu) {
  if (!(nu > -1.0 && nu < -0.5)) throw DomainError("x0_bound: nu must lie in (-1, -1/2)");
  const double poly = 6.0 * nu * nu * nu + 21.0 * nu * nu + 21.0 * nu + 6.0;
  return (2.0 / 3.0) * std::sqrt(-poly / (2.0 * nu + 3.0));
}

// ---- CSV cache --------------------------------------------------------------

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_zero_table_csv(std::ostream& os, const ZeroTable& t) {
  os << "nu,H,n,zero,bracket_lo,bracket_hi,tol\n";
  for (int n = t.n_min(); n <= t.n_max(); ++n) {
    const Bracket& b = t.bracket(n);
    os << format_g17(t.params().nu) << ',' << format_g17(t.params().h) << ',' << n << ','
       << format_g17(t.zero(n)) << ',' << format_g17(b.lo) << ',' << format_g17(b.hi) << ','
       << format_g17(t.tol()) << '\n';
  }
}

inline ZeroTable read_zero_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "nu,H,n,zero,bracket_lo,bracket_hi,tol") {
    throw CacheFormatError("zero cache: bad header");
  }
  ZeroTable t;
  bool first = true;
  int expect_n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    if (v.size() != 7) throw CacheFormatError("zero cache: expected 7 columns");
    if (first) {
      t.params_ = SpectralParams::make(v[0], v[1]);
      t.tol_ = v[6];
      expect_n = t.n_min();
      first = false;
    }
    if (static_cast<int>(v[2]) != expect_n) throw CacheFormatError("zero cache: index gap");
    ++expect_n;
    t.zeros_.push_back(v[3]);
    Bracket b{v[4], v[5], 0, 0};
    t.brackets_.push_back(b);
  }
  if (first || t.zeros_.size() < 2) throw CacheFormatError("zero cache: no rows");
  // bracket signs and interlacing zeros are recomputed, not stored
  const SpectralParams& p = t.params_;
  for (std::size_t i = 0; i < t.brackets_.size(); ++i) {
    Bracket& b = t.brackets_[i];
    if (b.lo == b.hi) continue;
    if (i == 0 && p.regime == Regime::minus) {
      b.sign_lo = sign_of(bessel_ih(p, b.lo));
      b.sign_hi = sign_of(bessel_ih(p, b.hi));
    } else {
      b.sign_lo = sign_of(bessel_jh(p, b.lo));
      b.sign_hi = sign_of(bessel_jh(p, b.hi));
    }
  }
  const int n_pos = t.n_max();
  detail::append_bessel_zeros(p.nu, t.jzeros_, p.regime == Regime::plus ? n_pos : n_pos + 1,
                              t.tol_);
  return t;
}

inline std::string zero_cache_path(const std::string& dir, const SpectralParams& p) {
  return dir + "/zeros_nu" + format_g17(p.nu) + "_H" + format_g17(p.h) + ".csv";
}

// Table lookup through $DINI_CACHE_DIR when set; otherwise a plain build.
inline ZeroTable cached_zero_table(const SpectralParams& p, int n_max, double tol = 1e-13) {
  const char* dir = std::getenv("DINI_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return build_zero_table(p, n_max, tol);
  const std::string path = zero_cache_path(dir, p);
  {
    std::ifstream in(path);
    if (in) {
      try {
        ZeroTable t = read_zero_table_csv(in);
        if (t.tol() <= tol && t.params().nu == p.nu && t.params().h == p.h) {
          return t.n_max() >= n_max ? t : extend_zero_table(t, n_max);
        }
      } catch (const CacheFormatError&) {
        // rebuilt below
      }
    }
  }
  ZeroTable t = build_zero_table(p, n_max, tol);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(path);
  if (out) write_zero_table_csv(out, t);
  return t;
}

}  // namespace dini
