#pragma once

// Closed-form envelopes for the heat, Poisson and potential kernels, the
// perturbation function F_nu separating the Dini and Jacobi operators, and
// the numerical witnesses built on them (ratio reports, the heat kernel
// sandwich, Rellich and Hardy inequalities).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dini/basis.hpp"
#include "dini/errors.hpp"
#include "dini/kernels.hpp"
#include "dini/numerics.hpp"
#include "dini/specfun.hpp"
#include "dini/zeros.hpp"

namespace dini {

// (1/4 - nu^2) [pi^2 / (4 sin^2(pi x / 2)) - 1/x^2], continuous on [0,1].
inline double F_nu(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("F_nu: order must exceed -1");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("F_nu: x outside [0,1]");
  const double c = 0.25 - nu * nu;
  const double pi = std::numbers::pi;
  const double u = 0.5 * pi * x;
  double bracket;
  if (u < 0.05) {
    // 1/sin^2 u - 1/u^2 = 1/3 + u^2/15 + 2u^4/189 + u^6/675 + ...
    const double u2 = u * u;
    bracket = 0.25 * pi * pi *
              (1.0 / 3.0 + u2 * (1.0 / 15.0 + u2 * (2.0 / 189.0 + u2 * (1.0 / 675.0))));
  } else {
    const double s = std::sin(u);
    bracket = pi * pi / (4.0 * s * s) - 1.0 / (x * x);
  }
  return c * bracket;
}

inline double F_nu_at_zero(double nu) {
  return (0.25 - nu * nu) * std::numbers::pi * std::numbers::pi / 12.0;
}

inline double F_nu_at_one(double nu) {
  return (0.25 - nu * nu) * (std::numbers::pi * std::numbers::pi / 4.0 - 1.0);
}

// Exponents p0 = 1/(nu + 3/2), p1 = -1/(nu + 1/2) for nu in (-1, -1/2).
inline std::pair<double, double> mapping_exponents(double nu) {
  if (!(nu > -1.0 && nu < -0.5)) throw DomainError("mapping_exponents: nu must lie in (-1,-1/2)");
  const double p0 = 1.0 / (nu + 1.5);
  double p1 = -1.0 / (nu + 0.5);
  if (!(p1 < 1e15)) p1 = std::numeric_limits<double>::infinity();
  return {p0, p1};
}

// ---- envelopes -------------------------------------------------------------------

enum class EnvelopeKind {
  heat_short,
  heat_long,
  jacobi_short,
  poisson_short,
  poisson_long,
  pot_bessel,
  pot_riesz
};

inline const char* envelope_kind_name(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::heat_short: return "heat_short";
    case EnvelopeKind::heat_long: return "heat_long";
    case EnvelopeKind::jacobi_short: return "jacobi_short";
    case EnvelopeKind::poisson_short: return "poisson_short";
    case EnvelopeKind::poisson_long: return "poisson_long";
    case EnvelopeKind::pot_bessel: return "pot_bessel";
    case EnvelopeKind::pot_riesz: return "pot_riesz";
  }
  return "?";
}

struct Envelope {
  EnvelopeKind kind = EnvelopeKind::heat_short;
  double nu = 0.0;
  double beta = -0.5;      // Jacobi only
  double shift = 0.0;      // d_nu for the Poisson large-time rate
  Regime regime = Regime::plus;
  double rate = 0.0;       // exponential rate of the large-time envelopes

  static Envelope heat_short(double nu) { return {EnvelopeKind::heat_short, nu}; }

  static Envelope jacobi_short(double alpha, double beta) {
    Envelope e{EnvelopeKind::jacobi_short, alpha};
    e.beta = beta;
    return e;
  }

  static Envelope poisson_short(double nu) { return {EnvelopeKind::poisson_short, nu}; }

  // (xy)^{nu+1/2} times exp(-t z_1^2), 1 or exp(t z_0^2) by the sign of nu + H.
  static Envelope heat_long(const ZeroTable& z) {
    Envelope e{EnvelopeKind::heat_long, z.params().nu};
    e.regime = z.params().regime;
    if (e.regime == Regime::plus) e.rate = z.zero(1) * z.zero(1);
    if (e.regime == Regime::minus) e.rate = -z.zero(0) * z.zero(0);
    return e;
  }

  static Envelope poisson_long(const ZeroTable& z, double d) {
    if (!(d >= 0.0)) throw DomainError("poisson_long: shift must be >= 0");
    Envelope e{EnvelopeKind::poisson_long, z.params().nu};
    e.regime = z.params().regime;
    e.shift = d;
    if (e.regime == Regime::plus) {
      e.rate = std::sqrt(z.zero(1) * z.zero(1) + d * d);
    } else if (e.regime == Regime::zero) {
      e.rate = d;
    } else {
      const double r = d * d - z.zero(0) * z.zero(0);
      if (r < 0.0) throw ShiftTooSmall("poisson_long: shift below z_0");
      e.rate = std::sqrt(r);
    }
    return e;
  }

  static Envelope pot_bessel(double nu) { return {EnvelopeKind::pot_bessel, nu}; }

  static Envelope pot_riesz(double nu) {
    if (!(nu > -0.5)) throw DomainError("Riesz potential envelope requires nu > -1/2");
    return {EnvelopeKind::pot_riesz, nu};
  }
};

namespace detail {

inline constexpr double kBranchBand = 1e-12;

inline double min1(double v) { return v < 1.0 ? v : 1.0; }

inline double potential_envelope(double nu, double sigma, double x, double y) {
  if (!(sigma > 0.0)) throw DomainError("potential envelope needs sigma > 0");
  const double s = x + y, r = 2.0 - x - y, a = std::abs(x - y);
  double v = 1.0;
  if (std::abs(sigma - (nu + 1.0)) <= kBranchBand) v += std::log(2.0 / s);
  const bool half = std::abs(sigma - 0.5) <= kBranchBand;
  if (half) v += std::log(2.0 / r);
  double branch;
  if (half) {
    if (a == 0.0) throw DomainError("potential envelope: sigma = 1/2 is singular on the diagonal");
    branch = std::log(s * r / a);
  } else if (sigma > 0.5) {
    branch = std::pow(r, 2.0 * sigma - 1.0);
  } else {
    if (a == 0.0) throw DomainError("potential envelope: sigma < 1/2 is singular on the diagonal");
    branch = std::pow(s / a, 1.0 - 2.0 * sigma);
  }
  v += std::pow(s, 2.0 * sigma - 2.0 * (nu + 1.0)) * branch;
  return std::pow(x * y, nu + 0.5) * v;
}

}  // namespace detail

inline double envelope_eval(const Envelope& e, double t_or_sigma, double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
    throw DomainError("envelope_eval: x and y must lie in (0,1)");
  }
  const double t = t_or_sigma;
  if (!(t > 0.0)) throw DomainError("envelope_eval: t or sigma must be positive");
  const double xy = x * y, dx = x - y;
  switch (e.kind) {
    case EnvelopeKind::heat_short:
      return std::pow(detail::min1(xy / t), e.nu + 0.5) / std::sqrt(t) *
             std::exp(-dx * dx / (4.0 * t));
    case EnvelopeKind::jacobi_short:
      return std::pow(detail::min1(xy / t), e.nu + 0.5) *
             std::pow(detail::min1((1.0 - x) * (1.0 - y) / t), e.beta + 0.5) / std::sqrt(t) *
             std::exp(-dx * dx / (4.0 * t));
    case EnvelopeKind::heat_long:
    case EnvelopeKind::poisson_long:
      return std::pow(xy, e.nu + 0.5) * std::exp(-t * e.rate);
    case EnvelopeKind::poisson_short:
      return std::pow(std::sqrt(xy) / (t + x + y), 2.0 * e.nu + 1.0) * t / (t * t + dx * dx);
    case EnvelopeKind::pot_bessel:
    case EnvelopeKind::pot_riesz:
      return detail::potential_envelope(e.nu, t, x, y);
  }
  throw DomainError("envelope_eval: unknown kind");
}

// ---- grids -------------------------------------------------------------------------

// n points in (0,1). With refinement, half of them are geometric between
// `inner` and 1/2, the other half mirrored towards 1.
inline std::vector<double> axis_points(int n, bool refine, double inner = 1e-3) {
  if (n < 1) throw DomainError("axis_points: need at least one point");
  std::vector<double> pts;
  if (!refine) {
    for (int i = 0; i < n; ++i) pts.push_back((i + 0.5) / n);
    return pts;
  }
  if (!(inner > 0.0 && inner < 0.5)) throw DomainError("axis_points: inner must lie in (0,1/2)");
  const int m = n / 2;
  for (int k = 0; k < m; ++k) {
    const double s = m == 1 ? 0.0 : double(k) / (m - 1);
    pts.push_back(inner * std::pow(0.45 / inner, s));
  }
  if (n % 2 == 1) pts.push_back(0.5);
  for (int k = m - 1; k >= 0; --k) pts.push_back(1.0 - pts[k]);
  std::sort(pts.begin(), pts.end());
  return pts;
}

using PointGrid = std::vector<std::array<double, 2>>;

inline PointGrid tensor_grid(const std::vector<double>& xs) {
  PointGrid g;
  g.reserve(xs.size() * xs.size());
  for (double x : xs)
    for (double y : xs) g.push_back({x, y});
  return g;
}

// Pairs (x, x + h) with h geometric in [h_min, h_max], approaching the diagonal.
inline PointGrid near_diagonal_pairs(const std::vector<double>& xs, int count, double h_min,
                                     double h_max) {
  PointGrid g;
  for (double x : xs) {
    for (int k = 0; k < count; ++k) {
      const double s = count == 1 ? 0.0 : double(k) / (count - 1);
      const double h = h_max * std::pow(h_min / h_max, s);
      const double y = x + h < 1.0 ? x + h : x - h;
      if (y > 0.0 && y < 1.0) g.push_back({x, y});
    }
  }
  return g;
}

// ---- ratio reports -------------------------------------------------------------------

struct RatioPoint {
  double x, y, kernel, envelope, ratio;
};

struct RatioReport {
  std::string kind;
  std::vector<std::pair<std::string, double>> params;
  double t = 0.0;
  int n_points = 0;
  int n_skipped = 0;  // points whose kernel value is not resolvable in binary64
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  std::array<double, 2> argmin{0.0, 0.0};
  std::array<double, 2> argmax{0.0, 0.0};
  std::vector<RatioPoint> points;

  double spread() const { return max_ratio / min_ratio; }
  bool ok() const {
    return n_points > 0 && std::isfinite(min_ratio) && std::isfinite(max_ratio) && min_ratio > 0.0;
  }

  void add(double x, double y, double kernel, double envelope) {
    const double r = kernel / envelope;
    if (!std::isfinite(r) || !(r > 0.0)) {
      throw NonFiniteRatio("kernel/envelope ratio " + format_g17(r) + " at (" + format_g17(x) +
                           ", " + format_g17(y) + ")");
    }
    points.push_back({x, y, kernel, envelope, r});
    ++n_points;
    if (r < min_ratio) {
      min_ratio = r;
      argmin = {x, y};
    }
    if (r > max_ratio) {
      max_ratio = r;
      argmax = {x, y};
    }
  }
};

// Kernel values below this fraction of the sum of |terms| are dominated by
// rounding and left out of ratio reports.
inline constexpr double kResolvableFraction = 1e-8;

// kernel(x, y) -> KernelValue; points failing `keep` or not resolvable are skipped.
inline RatioReport ratio_report(const std::string& kind,
                                std::vector<std::pair<std::string, double>> params,
                                const Envelope& env, double t_or_sigma, const PointGrid& grid,
                                const std::function<KernelValue(double, double)>& kernel,
                                const std::function<bool(double, double)>& keep = {}) {
  RatioReport rep;
  rep.kind = kind;
  rep.params = std::move(params);
  rep.t = t_or_sigma;
  for (const auto& pt : grid) {
    const double x = pt[0], y = pt[1];
    if (keep && !keep(x, y)) {
      ++rep.n_skipped;
      continue;
    }
    const KernelValue kv = kernel(x, y);
    if (std::abs(kv.value) < kResolvableFraction * kv.magnitude) {
      ++rep.n_skipped;
      continue;
    }
    rep.add(x, y, kv.value, envelope_eval(env, t_or_sigma, x, y));
  }
  if (rep.n_points == 0) throw NonFiniteRatio("ratio report: no resolvable grid point");
  return rep;
}

struct RatioOptions {
  double tol = 1e-13;
  double rel_tol = 1e-9;
  double shift = 1.0;      // d_nu for shifted Poisson kernels and Bessel potentials
  double diagonal_gap = 1e-4;
};

// Heat kernel of the Dini system against the short- or large-time envelope.
inline RatioReport heat_ratio_report(DiniEngine& eng, const Envelope& env, double t,
                                     const PointGrid& grid, const RatioOptions& o = {}) {
  const SpectralParams& p = eng.modes().basis().params();
  return ratio_report("heat", {{"nu", p.nu}, {"H", p.h}}, env, t, grid,
                      [&](double x, double y) { return eng.heat(t, x, y, o.tol, o.rel_tol); });
}

inline RatioReport jacobi_ratio_report(JacobiEngine& eng, const Envelope& env, double t,
                                       const PointGrid& grid, const RatioOptions& o = {}) {
  const JacobiParams& jp = eng.modes().basis().params();
  return ratio_report("jacobi_heat", {{"alpha", jp.alpha}, {"beta", jp.beta}}, env, t, grid,
                      [&](double x, double y) { return eng.heat(t, x, y, o.tol, o.rel_tol); });
}

inline RatioReport poisson_ratio_report(DiniEngine& eng, const Envelope& env, double t, double d,
                                        const PointGrid& grid, const RatioOptions& o = {}) {
  const SpectralParams& p = eng.modes().basis().params();
  return ratio_report(d == 0.0 ? "poisson" : "poisson_shifted",
                      {{"nu", p.nu}, {"H", p.h}, {"d", d}}, env, t, grid,
                      [&](double x, double y) { return eng.poisson(t, d, x, y, o.tol, o.rel_tol); });
}

// Potential kernels are evaluated off the band |x - y| < diagonal_gap.
inline RatioReport potential_ratio_report(DiniEngine& eng, double sigma, bool riesz,
                                          const PointGrid& grid, const RatioOptions& o = {}) {
  const SpectralParams& p = eng.modes().basis().params();
  const Envelope env = riesz ? Envelope::pot_riesz(p.nu) : Envelope::pot_bessel(p.nu);
  const double d = riesz ? 0.0 : o.shift;
  auto kernel = [&](double x, double y) {
    const double scale = envelope_eval(env, sigma, x, y);
    return eng.potential(sigma, d, x, y, std::max(o.tol, o.rel_tol * scale));
  };
  auto keep = [&](double x, double y) { return std::abs(x - y) >= o.diagonal_gap; };
  return ratio_report(riesz ? "riesz_potential" : "bessel_potential",
                      {{"nu", p.nu}, {"H", p.h}, {"d", d}}, env, sigma, grid, kernel, keep);
}

// ---- sandwich between the Dini and Jacobi heat kernels ------------------------------

struct SandwichPoint {
  double t, x, y, dini, jacobi, lower, upper, scale;
  double lower_slack() const { return dini - lower; }
  double upper_slack() const { return upper - dini; }
};

struct SandwichReport {
  double nu = 0.0;
  double lower_factor_rate = 0.0;  // lower = exp(t * rate) K
  double upper_factor_rate = 0.0;
  double slack_tol = 1e-7;
  int n_points = 0;
  double worst_lower = std::numeric_limits<double>::infinity();  // min slack / scale
  double worst_upper = std::numeric_limits<double>::infinity();
  SandwichPoint worst_lower_at{};
  SandwichPoint worst_upper_at{};
  double min_ratio = std::numeric_limits<double>::infinity();  // G / K
  double max_ratio = 0.0;
  std::vector<SandwichPoint> points;

  bool ok() const { return worst_lower >= -slack_tol && worst_upper >= -slack_tol; }
};

// exp(-t max F) K <= G <= exp(-t min F) K, with F extremal at the endpoints.
inline std::pair<double, double> sandwich_rates(double nu) {
  const double f0 = F_nu_at_zero(nu), f1 = F_nu_at_one(nu);
  return {-std::max(f0, f1), -std::min(f0, f1)};
}

// Slack is measured against the floating-point resolution of the two series:
// scale = max(G, sum|terms of G|, upper factor * sum|terms of K|).
inline SandwichReport sandwich_margins(double nu, const std::vector<double>& t_grid,
                                       const PointGrid& xy_grid, double tol = 1e-12,
                                       double slack_tol = 1e-7) {
  DiniEngine g = make_dini_engine(SpectralParams::make(nu, 0.5));
  JacobiEngine k = make_jacobi_engine(JacobiParams::make(nu, -0.5));
  SandwichReport rep;
  rep.nu = nu;
  rep.slack_tol = slack_tol;
  std::tie(rep.lower_factor_rate, rep.upper_factor_rate) = sandwich_rates(nu);
  for (double t : t_grid) {
    const double lo = std::exp(t * rep.lower_factor_rate);
    const double hi = std::exp(t * rep.upper_factor_rate);
    for (const auto& pt : xy_grid) {
      const double x = pt[0], y = pt[1];
      const KernelValue gv = g.heat(t, x, y, tol);
      const KernelValue kv = k.heat(t, x, y, tol);
      SandwichPoint sp{t, x, y, gv.value, kv.value, lo * kv.value, hi * kv.value, 0.0};
      sp.scale = std::max({std::abs(gv.value), gv.magnitude, hi * kv.magnitude});
      rep.points.push_back(sp);
      ++rep.n_points;
      const double l = sp.lower_slack() / sp.scale, u = sp.upper_slack() / sp.scale;
      if (l < rep.worst_lower) {
        rep.worst_lower = l;
        rep.worst_lower_at = sp;
      }
      if (u < rep.worst_upper) {
        rep.worst_upper = u;
        rep.worst_upper_at = sp;
      }
      if (kv.value > 0.0 && gv.value > 0.0) {
        rep.min_ratio = std::min(rep.min_ratio, gv.value / kv.value);
        rep.max_ratio = std::max(rep.max_ratio, gv.value / kv.value);
      }
    }
  }
  return rep;
}

inline SandwichReport sandwich_check(double nu, const std::vector<double>& t_grid,
                                     const PointGrid& xy_grid, double tol = 1e-12,
                                     double slack_tol = 1e-7) {
  SandwichReport rep = sandwich_margins(nu, t_grid, xy_grid, tol, slack_tol);
  if (!rep.ok()) {
    const bool lower = rep.worst_lower < -slack_tol;
    const SandwichPoint& p = lower ? rep.worst_lower_at : rep.worst_upper_at;
    throw SandwichViolation(std::string(lower ? "lower" : "upper") +
                            " sandwich inequality fails at t=" + format_g17(p.t) +
                            " x=" + format_g17(p.x) + " y=" + format_g17(p.y) +
                            " (G=" + format_g17(p.dini) + ", K=" + format_g17(p.jacobi) + ")");
  }
  return rep;
}

// ---- Rellich and Hardy inequalities ---------------------------------------------------

struct RellichResult {
  double lhs = 0.0;        // ||f/x^2||
  double rhs = 0.0;        // ||L f|| / (nu^2 - 1)
  double hardy_rhs = 0.0;  // (2/3) ||f'/x||
  int quad_points = 0;
  bool rellich_holds(double slack = 1e-6) const { return lhs <= rhs * (1.0 + slack); }
  bool hardy_holds(double slack = 1e-6) const { return lhs <= hardy_rhs * (1.0 + slack); }
};

// f = sum_i coeffs[i] psi_{i+1}; the basis must contain psi_1 .. psi_{coeffs.size()}.
// The quadrature is doubled until ||f/x^2|| and ||f'/x|| settle to 1e-12.
inline RellichResult rellich_check(const BasisSpec& b, const std::vector<double>& coeffs,
                                   int uniform_points = 512) {
  const SpectralParams& p = b.params();
  if (!(p.nu > 1.0)) throw DomainError("rellich_check: nu must exceed 1");
  if (p.h != 0.5) throw DomainError("rellich_check: H must be 1/2");
  const int n_last = static_cast<int>(coeffs.size());
  if (n_last > b.n_max()) throw IndexError("rellich_check: basis too short");
  RellichResult r;
  KahanSum lf;
  for (int n = 1; n <= n_last; ++n) {
    const double v = coeffs[n - 1] * b.eigenvalue(n);
    lf.add(v * v);
  }
  r.rhs = std::sqrt(lf.value()) / (p.nu * p.nu - 1.0);
  bool any = false;
  for (double c : coeffs) any = any || c != 0.0;
  if (!any) return r;
  auto norms = [&](const QuadratureRule& q) {
    KahanSum a, d;
    std::vector<double> col;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double x = q.nodes[i];
      b.column(x, n_last, col);
      double f = 0.0, df = 0.0;
      for (int n = 1; n <= n_last; ++n) {
        if (coeffs[n - 1] == 0.0) continue;
        f += coeffs[n - 1] * col[n - b.n_min()];
        df += coeffs[n - 1] * b.dpsi(n, x);
      }
      const double x2 = x * x;
      a.add(q.weights[i] * f * f / (x2 * x2));
      d.add(q.weights[i] * df * df / x2);
    }
    return std::pair{std::sqrt(a.value()), std::sqrt(d.value())};
  };
  // (f/x^2)^2 and (f'/x)^2 behave like x^{2 nu - 3} at the origin
  const double a = 2.0 * p.nu - 3.0;
  int m = uniform_points;
  auto prev = norms(graded_rule(a, m));
  for (int it = 0; it < 4; ++it) {
    m *= 2;
    const auto cur = norms(graded_rule(a, m));
    const bool settled = std::abs(cur.first - prev.first) <= 1e-12 * cur.first &&
                         std::abs(cur.second - prev.second) <= 1e-12 * cur.second;
    prev = cur;
    if (settled) break;
  }
  r.lhs = prev.first;
  r.hardy_rhs = 2.0 / 3.0 * prev.second;
  r.quad_points = m;
  return r;
}

// ---- serialization -------------------------------------------------------------------

namespace detail {

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_g17(v);
}

}  // namespace detail

inline void write_json(std::ostream& os, const RatioReport& r) {
  using detail::json_number;
  os << "{\"kind\":" << detail::json_string(r.kind) << ",\"params\":{";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) os << ',';
    os << detail::json_string(r.params[i].first) << ':' << json_number(r.params[i].second);
  }
  os << "},\"t\":" << json_number(r.t) << ",\"n_points\":" << r.n_points
     << ",\"min_ratio\":" << json_number(r.min_ratio)
     << ",\"max_ratio\":" << json_number(r.max_ratio) << ",\"argmin\":["
     << json_number(r.argmin[0]) << ',' << json_number(r.argmin[1]) << "],\"argmax\":["
     << json_number(r.argmax[0]) << ',' << json_number(r.argmax[1]) << "]}";
}

inline void write_json(std::ostream& os, const SandwichReport& r) {
  using detail::json_number;
  auto point = [&](const SandwichPoint& p) {
    os << "{\"t\":" << json_number(p.t) << ",\"x\":" << json_number(p.x)
       << ",\"y\":" << json_number(p.y) << ",\"dini\":" << json_number(p.dini)
       << ",\"jacobi\":" << json_number(p.jacobi) << ",\"scale\":" << json_number(p.scale) << '}';
  };
  os << "{\"kind\":\"sandwich\",\"params\":{\"nu\":" << json_number(r.nu)
     << ",\"H\":0.5},\"n_points\":" << r.n_points
     << ",\"lower_rate\":" << json_number(r.lower_factor_rate)
     << ",\"upper_rate\":" << json_number(r.upper_factor_rate)
     << ",\"slack_tol\":" << json_number(r.slack_tol)
     << ",\"worst_lower_slack\":" << json_number(r.worst_lower)
     << ",\"worst_upper_slack\":" << json_number(r.worst_upper)
     << ",\"min_ratio\":" << json_number(r.min_ratio)
     << ",\"max_ratio\":" << json_number(r.max_ratio) << ",\"worst_lower_at\":";
  point(r.worst_lower_at);
  os << ",\"worst_upper_at\":";
  point(r.worst_upper_at);
  os << ",\"pass\":" << (r.ok() ? "true" : "false") << '}';
}

inline void write_csv(std::ostream& os, const RatioReport& r) {
  os << "x,y,kernel,envelope,ratio\n";
  for (const auto& p : r.points) {
    os << format_g17(p.x) << ',' << format_g17(p.y) << ',' << format_g17(p.kernel) << ','
       << format_g17(p.envelope) << ',' << format_g17(p.ratio) << '\n';
  }
}

inline void write_csv(std::ostream& os, const SandwichReport& r) {
  os << "t,x,y,dini,jacobi,lower,upper,scale\n";
  for (const auto& p : r.points) {
    os << format_g17(p.t) << ',' << format_g17(p.x) << ',' << format_g17(p.y) << ','
       << format_g17(p.dini) << ',' << format_g17(p.jacobi) << ',' << format_g17(p.lower) << ','
       << format_g17(p.upper) << ',' << format_g17(p.scale) << '\n';
  }
}

// Long-format sweep rows: one line per report.
inline void write_sweep_csv(std::ostream& os, const std::vector<RatioReport>& reports) {
  os << "kind,nu,t,n_points,min_ratio,max_ratio,spread\n";
  for (const auto& r : reports) {
    double nu = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [k, v] : r.params)
      if (k == "nu" || k == "alpha") nu = v;
    os << r.kind << ',' << format_g17(nu) << ',' << format_g17(r.t) << ',' << r.n_points << ','
       << format_g17(r.min_ratio) << ',' << format_g17(r.max_ratio) << ','
       << format_g17(r.spread()) << '\n';
  }
}

}  // namespace dini
