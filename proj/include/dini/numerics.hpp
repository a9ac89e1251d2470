#pragma once

// Root refinement, Gauss-Legendre rules and adaptive quadrature on (0,1) and
// on the half-line.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dini/errors.hpp"

namespace dini {

// Neumaier variant of compensated summation.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  KahanSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int sign_lo = 0;
  int sign_hi = 0;

  double width() const { return hi - lo; }
  bool valid() const { return lo < hi && sign_lo * sign_hi < 0; }
};

struct RootResult {
  double root = 0.0;
  Bracket bracket;
  int iterations = 0;
};

namespace detail {

template <class F>
std::pair<double, double> eval_fdf(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (std::is_convertible_v<R, double>) {
    return {static_cast<double>(f(x)), std::numeric_limits<double>::quiet_NaN()};
  } else {
    auto r = f(x);
    return {static_cast<double>(r.first), static_cast<double>(r.second)};
  }
}

}  // namespace detail

// Bisection with Newton steps kept inside the bracket. `f` returns either the
// value or a (value, derivative) pair. The returned bracket encloses the root
// and has width <= tol.
template <class F>
RootResult refine_root(F&& f, Bracket b, double tol, int max_iter = 200) {
  if (!(tol > 0.0)) throw DomainError("refine_root: tol must be positive");
  if (!(b.lo < b.hi)) throw DomainError("refine_root: empty bracket");
  auto [flo, dlo] = detail::eval_fdf(f, b.lo);
  auto [fhi, dhi] = detail::eval_fdf(f, b.hi);
  if (flo == 0.0) return {b.lo, {b.lo, b.lo, 0, 0}, 0};
  if (fhi == 0.0) return {b.hi, {b.hi, b.hi, 0, 0}, 0};
  if (sign_of(flo) * sign_of(fhi) > 0) {
    throw NoSignChange("refine_root: no sign change on [" + std::to_string(b.lo) + ", " +
                       std::to_string(b.hi) + "]");
  }
  double lo = b.lo, hi = b.hi;
  double x = lo - flo * (hi - lo) / (fhi - flo);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  // a Newton or secant step is taken only while it stays inside the bracket
  // and at most halves the previous step; otherwise bisect
  double dx_old = hi - lo, dx = dx_old;
  for (int it = 1; it <= max_iter; ++it) {
    auto [fx, dfx] = detail::eval_fdf(f, x);
    if (fx == 0.0) return {x, {x, x, 0, 0}, it};
    if (sign_of(fx) == sign_of(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    const double width = hi - lo;
    if (width <= tol) {
      double r = lo - flo * width / (fhi - flo);
      if (!(r >= lo && r <= hi)) r = 0.5 * (lo + hi);
      return {r, {lo, hi, sign_of(flo), sign_of(fhi)}, it};
    }
    double step;
    if (std::isfinite(dfx) && dfx != 0.0) {
      step = -fx / dfx;
    } else {
      step = (lo - flo * width / (fhi - flo)) - x;
    }
    // a step below tol/2 would not let the bracket close
    if (std::abs(step) < 0.5 * tol) step = std::copysign(0.5 * tol, step);
    double next = x + step;
    if (!(next > lo && next < hi) || !(std::abs(step) <= 0.5 * std::abs(dx_old))) {
      next = 0.5 * (lo + hi);
    }
    if (next == lo || next == hi) {
      throw MaxIterations("refine_root: bracket cannot shrink to tol=" + std::to_string(tol));
    }
    dx_old = dx;
    dx = next - x;
    x = next;
  }
  throw MaxIterations("refine_root: tolerance not reached in " + std::to_string(max_iter) +
                      " steps");
}

// Nodes and weights on (0,1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    KahanSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
    return s.value();
  }
};

namespace detail {

// Legendre P_n(cos th) and d/dth P_n(cos th).
inline std::pair<double, double> legendre_theta(int n, double th) {
  const double t = std::cos(th);
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // P_n'(t) = n (t P_n - P_{n-1}) / (t^2 - 1)
  const double s = std::sin(th);
  const double dp_dt = n * (p0 - t * p1) / (s * s);
  return {p1, -s * dp_dt};
}

}  // namespace detail

inline QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 4096) throw DomainError("gauss_legendre: n must lie in [1, 4096]");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::numbers::pi;
  for (int i = 1; i <= (n + 1) / 2; ++i) {
    // root of P_n(cos th) with th in (0, pi/2]
    double th = pi * (i - 0.25) / (n + 0.5);
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = detail::legendre_theta(n, th);
      const double step = p / dp;
      th -= step;
      if (std::abs(step) < 1e-17) break;
    }
    auto [p, dp] = detail::legendre_theta(n, th);
    (void)p;
    // dP/dt = -(dP/dth)/sin th ; w = 2 / ((1-t^2) P'(t)^2) = 2 / dp^2
    const double w = 2.0 / (dp * dp);
    const double half = 0.5 * th;
    const double xl = std::sin(half) * std::sin(half);  // (1 - cos th)/2
    const double xr = std::cos(half) * std::cos(half);
    rule.nodes[i - 1] = xl;
    rule.weights[i - 1] = 0.5 * w;
    rule.nodes[n - i] = xr;
    rule.weights[n - i] = 0.5 * w;
  }
  return rule;
}

// Map a rule from (0,1) onto (a,b) and append.
inline void append_mapped(QuadratureRule& out, const QuadratureRule& base, double a, double b) {
  const double h = b - a;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.nodes.push_back(a + h * base.nodes[i]);
    out.weights.push_back(h * base.weights[i]);
  }
}

// Composite rule on (0,1) for integrands behaving like x^a g(x) at 0 with g
// smooth: `uniform_points` Gauss points in 32-point panels, the first panel
// replaced by geometric panels shrinking towards 0 and a one-point
// Gauss-Jacobi rule (weight x^a) on the innermost cell.
inline QuadratureRule graded_rule(double endpoint_exponent, int uniform_points = 512,
                                  int points_per_panel = 32) {
  const double a = endpoint_exponent;
  if (!(a > -1.0)) throw DomainError("graded_rule: endpoint exponent must exceed -1");
  if (uniform_points < points_per_panel) uniform_points = points_per_panel;
  const int panels = uniform_points / points_per_panel;
  const QuadratureRule base = gauss_legendre(points_per_panel);
  const QuadratureRule inner = gauss_legendre(20);
  const double h = 1.0 / panels;
  const double q = 0.25;
  // innermost width w with w^(2+a) <= 1e-16: the one-point rule is exact for
  // x^a (c0 + c1 x), so its error there is O(w^(2+a)); w <= 1e-6 keeps
  // oscillating factors resolved
  const double target = std::min(1e-6, std::pow(1e-16, 1.0 / (2.0 + a)));
  int levels = 0;
  while (h * std::pow(q, levels) > target && levels < 400) ++levels;
  const double w = h * std::pow(q, levels);
  QuadratureRule rule;
  const double xs = w * (1.0 + a) / (2.0 + a);
  rule.nodes.push_back(xs);
  rule.weights.push_back(std::pow(w, 1.0 + a) / ((1.0 + a) * std::pow(xs, a)));
  for (int l = levels; l >= 1; --l) {
    append_mapped(rule, inner, h * std::pow(q, l), h * std::pow(q, l - 1));
  }
  for (int p = 1; p < panels; ++p) append_mapped(rule, base, p * h, (p + 1) * h);
  return rule;
}

struct HalflineOptions {
  double decay_rate = 1.0;  // expected exponential decay rate of the integrand
  int max_panels = 4000;
  int points_per_panel = 16;
};

struct HalflineResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  long evaluations = 0;
};

namespace detail {

template <class G>
HalflineResult adaptive_unit(G&& g, double tol, int max_panels, const QuadratureRule& gl,
                             long& evals) {
  // Each panel carries the sum over its two halves and the difference to the
  // single-panel value; the panel with the largest difference is split until
  // the differences add up to at most tol.
  struct Panel {
    double a, b, value, left, right, err;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto panel_sum = [&](double a, double b) {
    KahanSum s;
    const double h = b - a;
    for (std::size_t i = 0; i < gl.size(); ++i) s.add(gl.weights[i] * g(a + h * gl.nodes[i]));
    evals += static_cast<long>(gl.size());
    return h * s.value();
  };
  auto make = [&](double a, double b, double whole) {
    const double m = 0.5 * (a + b);
    const double l = panel_sum(a, m), r = panel_sum(m, b);
    return Panel{a, b, l + r, l, r, std::abs(l + r - whole)};
  };
  std::priority_queue<Panel> heap;
  double err_total = 0.0;
  const int initial = 8;
  for (int i = 0; i < initial; ++i) {
    const double a = double(i) / initial, b = double(i + 1) / initial;
    Panel p = make(a, b, panel_sum(a, b));
    err_total += p.err;
    heap.push(p);
  }
  int panels = initial;
  while (err_total > tol) {
    if (panels >= max_panels) {
      throw MaxPanels("integrate_halfline: panel budget exhausted (error " +
                      std::to_string(err_total) + ")");
    }
    Panel p = heap.top();
    heap.pop();
    err_total -= p.err;
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      throw MaxPanels("integrate_halfline: panel cannot be split further");
    }
    Panel l = make(p.a, m, p.left);
    Panel r = make(m, p.b, p.right);
    err_total += l.err + r.err;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  KahanSum total, err;
  while (!heap.empty()) {
    total.add(heap.top().value);
    err.add(heap.top().err);
    heap.pop();
  }
  return {total.value(), err.value(), panels, evals};
}

}  // namespace detail

// Integral of f over (0, inf): adaptive Gauss-Legendre panels on (0,1), and the
// tail mapped to (0,1) by t = 1 + L u/(1-u) with L = 1/decay_rate. Panel
// errors are the disagreement between a panel and its two halves.
template <class F>
HalflineResult integrate_halfline(F&& f, double tol, HalflineOptions opt = {}) {
  if (!(tol > 0.0)) throw DomainError("integrate_halfline: tol must be positive");
  if (!(opt.decay_rate > 0.0)) throw DomainError("integrate_halfline: decay rate must be positive");
  const QuadratureRule gl = gauss_legendre(opt.points_per_panel);
  const double L = 1.0 / opt.decay_rate;
  auto tail = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double om = 1.0 - u;
    const double t = 1.0 + L * u / om;
    return f(t) * L / (om * om);
  };
  // a decaying integrand must be negligible far out
  const double far1 = std::abs(tail(1.0 - 1e-3));
  const double far2 = std::abs(tail(1.0 - 1e-5));
  if (!std::isfinite(far1) || !std::isfinite(far2) || far2 > std::max(far1, tol)) {
    throw TailNotDecaying("integrate_halfline: integrand does not decay");
  }
  long evals = 2;
  auto head = detail::adaptive_unit([&](double t) { return f(t); }, 0.5 * tol, opt.max_panels,
                                    gl, evals);
  auto rest = detail::adaptive_unit(tail, 0.5 * tol, opt.max_panels, gl, evals);
  return {head.value + rest.value, head.error_estimate + rest.error_estimate,
          head.panels + rest.panels, evals};
}

}  // namespace dini
