#pragma once

// Heat, Poisson and potential kernels as eigenfunction series.
//
// Series with exponential multipliers are truncated once a certified tail
// bound drops below the tolerance. The bound uses
//   |psi_n(x)| <= M w(x),   z_n >= pi (n - c),
// with M taken 1.5 times the sup observed over a probe grid and c read off the
// zero table. Potential series only converge conditionally off the diagonal;
// they are summed with a Gaussian regularizer exp(-eps L) at a ladder of eps
// values and extrapolated to eps = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dini/basis.hpp"
#include "dini/errors.hpp"
#include "dini/numerics.hpp"
#include "dini/specfun.hpp"

namespace dini {

enum class KernelKind { heat, jacobi_heat, poisson, poisson_shifted, riesz_potential, bessel_potential };

inline const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::heat: return "heat";
    case KernelKind::jacobi_heat: return "jacobi_heat";
    case KernelKind::poisson: return "poisson";
    case KernelKind::poisson_shifted: return "poisson_shifted";
    case KernelKind::riesz_potential: return "riesz_potential";
    case KernelKind::bessel_potential: return "bessel_potential";
  }
  return "?";
}

struct KernelValue {
  double value = 0.0;
  int n_terms = 0;
  double tail_bound = 0.0;  // certified tail, or extrapolation error for potentials
  double magnitude = 0.0;   // sum of |terms|; floating-point resolution scale
};

// ---- mode systems ------------------------------------------------------------

class DiniModes {
 public:
  explicit DiniModes(BasisSpec b) : basis_(std::move(b)) { shift_ = basis_.zeros().lower_shift(); }

  int first() const { return basis_.n_min(); }
  int last() const { return basis_.n_max(); }
  double eigen(int n) const { return basis_.eigenvalue(n); }
  // z_n >= pi (n - shift) for n >= 1
  double shift() const { return shift_; }
  double weight(double x) const {
    const double e = basis_.params().nu + 0.5;
    return e < 0.0 ? std::pow(x, e) : 1.0;
  }
  void grow(int n) {
    if (n <= last()) return;
    basis_ = basis_.extended(std::max(n, last() + last() / 2));
    shift_ = basis_.zeros().lower_shift();
  }
  // psi_n(x) for from <= n <= to into out[0..]
  void column(double x, int from, int to, double* out) const {
    const double sx = std::sqrt(x);
    const double nu = basis_.params().nu;
    for (int n = from; n <= to; ++n) {
      if (n == 0) {
        out[0] = basis_.psi(0, x);
        ++out;
        continue;
      }
      *out++ = basis_.norm_const(n) * sx * bessel_j(nu, basis_.zeros().zero(n) * x);
    }
  }
  bool appendable() const { return true; }
  const BasisSpec& basis() const { return basis_; }

 private:
  BasisSpec basis_;
  double shift_ = 0.0;
};

class JacobiModes {
 public:
  explicit JacobiModes(JacobiBasis b) : basis_(std::move(b)) {}

  int first() const { return 0; }
  int last() const { return basis_.k_max(); }
  double eigen(int k) const { return basis_.eigenvalue(k); }
  // sqrt(Lambda_k) = pi (k + (alpha+beta+1)/2)
  double shift() const {
    return std::max(0.0, -0.5 * (basis_.params().alpha + basis_.params().beta + 1.0));
  }
  double weight(double x) const {
    const double h = 0.5 * std::numbers::pi * x;
    const double ea = basis_.params().alpha + 0.5, eb = basis_.params().beta + 0.5;
    double w = 1.0;
    if (ea < 0.0) w *= std::pow(std::sin(h), ea);
    if (eb < 0.0) w *= std::pow(std::cos(h), eb);
    return w;
  }
  void grow(int k) {
    if (k <= last()) return;
    basis_ = basis_.extended(std::max(k, last() + last() / 2));
  }
  void column(double x, int from, int to, double* out) const {
    std::vector<double> all;
    basis_.column(x, to, all);
    std::copy(all.begin() + from, all.begin() + to + 1, out);
  }
  bool appendable() const { return false; }
  const JacobiBasis& basis() const { return basis_; }

 private:
  JacobiBasis basis_;
};

namespace detail {

inline constexpr double kpi = std::numbers::pi;

// sum_{n>N} exp(-t pi^2 (n-c)^2)
inline double gauss_tail(double t, double c, int N) {
  const double a = N - c;
  if (a <= 0.0) return std::numeric_limits<double>::infinity();
  return std::erfc(kpi * std::sqrt(t) * a) / (2.0 * std::sqrt(kpi * t));
}

// sum_{n>N} exp(-t pi (n-c))
inline double exp_tail(double t, double c, int N) {
  const double a = N + 1 - c;
  if (a <= 0.0) return std::numeric_limits<double>::infinity();
  return std::exp(-t * kpi * a) / (-std::expm1(-t * kpi));
}

// sum_{n>N} (pi (n-c))^{-s}, s > 1
inline double power_tail(double s, double c, int N) {
  const double a = N - c;
  if (a <= 0.0 || s <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(kpi, -s) * std::pow(a, 1.0 - s) / (s - 1.0);
}

// Smallest N >= lo with bound(N) <= target, or -1 if none below cap.
template <class B>
int plan_terms(B&& bound, int lo, double target, int cap) {
  int hi = std::max(lo, 1);
  while (!(bound(hi) <= target)) {
    if (hi >= cap) return -1;
    hi = std::min(cap, 2 * hi);
  }
  int a = lo;
  while (a < hi) {
    const int m = a + (hi - a) / 2;
    if (bound(m) <= target) hi = m;
    else a = m + 1;
  }
  return hi;
}

// Neville extrapolation of (eps_k, s_k) to eps = 0. Returns the value using
// all levels and the difference to the value without the coarsest level.
inline std::pair<double, double> extrapolate_to_zero(const std::vector<double>& eps,
                                                     const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    T[i][0] = s[i];
    for (int j = 1; j <= i; ++j) {
      const double a = eps[i - j], b = eps[i];
      T[i][j] = (a * T[i][j - 1] - b * T[i - 1][j - 1]) / (a - b);
    }
  }
  if (n == 1) return {T[0][0], std::abs(T[0][0])};
  return {T[n - 1][n - 1], std::abs(T[n - 1][n - 1] - T[n - 1][n - 2])};
}

}  // namespace detail

struct RegularizerOptions {
  double eps_factor = 1.0 / 50.0;  // eps_0 = eps_factor * delta^2
  int levels = 7;
  int max_levels = 10;
};

template <class Modes>
class SeriesEngine {
 public:
  static constexpr int kProbeModes = 40;
  static constexpr int kProbeGrid = 10000;
  static constexpr int kTermCap = 400000;

  explicit SeriesEngine(Modes modes) : modes_(std::move(modes)) { certify(); }

  const Modes& modes() const { return modes_; }
  // Empirical sup constant M with |psi_n(x)| <= M w(x), n >= 1.
  double sup_const() const { return sup_; }

  // ---- heat ------------------------------------------------------------------

  KernelValue heat(double t, double x, double y, double tol, double rel_tol = 0.0) {
    if (!(t > 0.0)) throw DomainError("heat kernel needs t > 0");
    auto mult = [t](double e) { return std::exp(-t * e); };
    auto tail = [this, t](int N) { return detail::gauss_tail(t, modes_.shift(), N); };
    return direct_sum(x, y, mult, tail, tol, rel_tol);
  }

  // ---- Poisson ---------------------------------------------------------------

  KernelValue poisson(double t, double d, double x, double y, double tol, double rel_tol = 0.0) {
    if (!(t > 0.0)) throw DomainError("Poisson kernel needs t > 0");
    check_shift(d, "Poisson kernel");
    auto mult = [t, d](double e) { return std::exp(-t * std::sqrt(d * d + e)); };
    auto tail = [this, t](int N) { return detail::exp_tail(t, modes_.shift(), N); };
    return direct_sum(x, y, mult, tail, tol, rel_tol);
  }

  // ---- potentials --------------------------------------------------------------

  // sum_n (d^2 + e_n)^{-sigma} psi_n(x) psi_n(y)
  KernelValue potential(double sigma, double d, double x, double y, double tol,
                        RegularizerOptions opt = {}) {
    if (!(sigma > 0.0)) throw DomainError("potential order must be positive");
    check_shift(d, "potential kernel");
    auto mult = [sigma, d](double e) { return std::pow(d * d + e, -sigma); };
    const double delta = separation(x, y);
    const bool diagonal = delta < kDiagonalBand;
    if (diagonal && sigma <= 0.5) {
      throw DiagonalSlowConvergence("potential series diverges on the diagonal for sigma <= 1/2");
    }
    // direct summation with an algebraic tail when affordable
    int n_direct = -1;
    if (sigma > 0.5) {
      const double scale = envelope_scale(x, y);
      auto bound = [&](int N) { return scale * detail::power_tail(2.0 * sigma, modes_.shift(), N); };
      n_direct = detail::plan_terms(bound, first_tail_index(), tol, kTermCap);
    }
    const double reg_scale = envelope_scale(x, y) * mult(modes_.eigen(modes_.first()));
    const int n_reg = diagonal ? -1 : regularized_terms(delta, tol, reg_scale, opt);
    if (n_direct > 0 && (n_reg < 0 || n_direct <= n_reg)) {
      auto tail = [this, sigma](int N) {
        return detail::power_tail(2.0 * sigma, modes_.shift(), N);
      };
      return direct_sum(x, y, mult, tail, tol, 0.0);
    }
    if (n_reg < 0) {
      throw TailBoundFailure("potential series: no affordable truncation at this point");
    }
    return regularized_sum(x, y, mult, delta, tol, reg_scale, opt);
  }

  // (1/Gamma(2 sigma)) int_0^inf H_t(x,y) t^{2 sigma - 1} dt with H_t the
  // (shifted) Poisson kernel.
  KernelValue potential_time_integral(double sigma, double d, double x, double y, double tol,
                                      RegularizerOptions opt = {}) {
    if (!(sigma > 0.0)) throw DomainError("potential order must be positive");
    check_shift(d, "potential kernel");
    const double delta = separation(x, y);
    if (delta < kDiagonalBand) {
      throw DiagonalSlowConvergence("time integral is evaluated off the diagonal only");
    }
    const double reg_scale = envelope_scale(x, y);
    const int n_reg = regularized_terms(delta, tol, reg_scale, opt);
    if (n_reg < 0) throw TailBoundFailure("time integral: regularized sum too long");
    ensure(n_reg);
    const int first = modes_.first();
    const std::vector<double>& cx = column(x, n_reg);
    const std::vector<double>& cy = column(y, n_reg);
    const int count = n_reg - first + 1;
    std::vector<double> lam(count), p(count);
    for (int i = 0; i < count; ++i) {
      lam[i] = std::sqrt(d * d + modes_.eigen(first + i));
      p[i] = cx[i] * cy[i];
    }
    const Ladder lad = ladder(delta, tol, reg_scale, opt);
    // per-level damping exp(-eps_k e_n)
    std::vector<std::vector<double>> damp(lad.eps.size(), std::vector<double>(count, 0.0));
    for (int i = 0; i < count; ++i) {
      const double e = modes_.eigen(first + i);
      for (std::size_t k = 0; k < lad.eps.size(); ++k) {
        if (first + i <= lad.terms[k]) damp[k][i] = std::exp(-lad.eps[k] * e);
      }
    }
    const double scale = reg_scale;
    auto poisson_at = [&](double t) -> double {
      auto tail = [&](int N) { return scale * detail::exp_tail(t, modes_.shift(), N); };
      const int nd = detail::plan_terms(tail, first_tail_index(), 1e-3 * tol, kTermCap);
      if (nd > 0 && nd <= n_reg) {
        KahanSum s;
        for (int i = 0; i <= nd - first; ++i) s.add(std::exp(-t * lam[i]) * p[i]);
        return s.value();
      }
      std::vector<KahanSum> acc(lad.eps.size());
      for (int i = 0; i < count; ++i) {
        const double term = std::exp(-t * lam[i]) * p[i];
        for (std::size_t k = 0; k < lad.eps.size(); ++k) {
          if (damp[k][i] != 0.0) acc[k].add(damp[k][i] * term);
        }
      }
      std::vector<double> s(acc.size());
      for (std::size_t k = 0; k < acc.size(); ++k) s[k] = acc[k].value();
      return detail::extrapolate_to_zero(lad.eps, s).first;
    };
    const double g = std::tgamma(2.0 * sigma);
    double lam_min = lam[0];
    for (double l : lam) lam_min = std::min(lam_min, l);
    auto integrand = [&](double t) { return std::pow(t, 2.0 * sigma - 1.0) * poisson_at(t) / g; };
    HalflineOptions ho;
    ho.decay_rate = lam_min;
    const HalflineResult r = integrate_halfline(integrand, tol, ho);
    KernelValue kv;
    kv.value = r.value;
    kv.n_terms = n_reg;
    kv.tail_bound = r.error_estimate;
    kv.magnitude = std::abs(r.value);
    return kv;
  }

  // psi_n(x) for n = first .. last, cached per x.
  const std::vector<double>& column(double x, int last) {
    ensure(last);
    auto it = cols_.find(x);
    const int first = modes_.first();
    if (it == cols_.end()) {
      it = cols_.emplace(x, std::vector<double>()).first;
    }
    std::vector<double>& c = it->second;
    const int have = first + static_cast<int>(c.size()) - 1;
    if (have < last) {
      if (modes_.appendable() && !c.empty()) {
        c.resize(last - first + 1);
        modes_.column(x, have + 1, last, c.data() + (have + 1 - first));
      } else {
        c.assign(last - first + 1, 0.0);
        modes_.column(x, first, last, c.data());
      }
      const double w = modes_.weight(x);
      for (int n = std::max(first, have + 1); n <= last; ++n) {
        // the Dini ground state is summed exactly and never enters a tail
        if (n == 0 && std::is_same_v<Modes, DiniModes>) continue;
        const double r = std::abs(c[n - first]) / w;
        if (r > sup_) sup_ = 1.5 * r;
      }
    }
    return c;
  }

  void ensure(int last) {
    if (last > modes_.last()) modes_.grow(last);
  }

  void clear_columns() { cols_.clear(); }

  static constexpr double kDiagonalBand = 1e-6;

  // min(|x-y|, x+y, 2-x-y): distance to the singular set of the kernels and
  // its reflections through the endpoints.
  static double separation(double x, double y) {
    return std::min({std::abs(x - y), x + y, 2.0 - x - y});
  }

 private:
  struct Ladder {
    std::vector<double> eps;
    std::vector<int> terms;
  };

  int first_tail_index() const {
    return std::max(modes_.first(), static_cast<int>(std::ceil(modes_.shift())) + 1);
  }

  double envelope_scale(double x, double y) const {
    return sup_ * sup_ * modes_.weight(x) * modes_.weight(y);
  }

  void check_shift(double d, const char* what) {
    if (!(d >= 0.0)) throw DomainError(std::string(what) + ": shift must be >= 0");
    const double e0 = modes_.eigen(modes_.first());
    if (d * d + e0 < 0.0) {
      throw ShiftTooSmall(std::string(what) + ": shift below the imaginary zero z_0");
    }
    if (d * d + e0 == 0.0) {
      throw SpectrumNotPositive(std::string(what) + ": operator has a zero eigenvalue");
    }
  }

  // eps_k = eps_0 2^{-k}; level k keeps terms until scale * gaussian tail <= 1e-4 tol
  Ladder ladder(double delta, double tol, double scale, const RegularizerOptions& opt,
                int levels = -1) {
    Ladder lad;
    const int L = levels > 0 ? levels : opt.levels;
    double eps = opt.eps_factor * delta * delta;
    for (int k = 0; k < L; ++k) {
      lad.eps.push_back(eps);
      auto bound = [&](int N) { return scale * detail::gauss_tail(eps, modes_.shift(), N); };
      lad.terms.push_back(detail::plan_terms(bound, first_tail_index(), 1e-4 * tol, kTermCap));
      eps *= 0.5;
    }
    return lad;
  }

  int regularized_terms(double delta, double tol, double scale, const RegularizerOptions& opt) {
    const Ladder lad = ladder(delta, tol, scale, opt);
    for (int n : lad.terms) {
      if (n < 0) return -1;
    }
    return lad.terms.back();
  }

  template <class Mult, class Tail>
  KernelValue direct_sum(double x, double y, Mult&& mult, Tail&& tail, double tol,
                         double rel_tol) {
    if (!(tol > 0.0)) throw DomainError("kernel tolerance must be positive");
    double target = tol;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const double scale = envelope_scale(x, y);
      const int N = detail::plan_terms([&](int n) { return scale * tail(n); }, first_tail_index(),
                                       target, kTermCap);
      if (N < 0) throw TailBoundFailure("kernel series: truncation exceeds the term cap");
      const double sup_before = sup_;
      const std::vector<double>& cx = column(x, N);
      const std::vector<double>& cy = column(y, N);
      if (sup_ > sup_before) continue;  // constant re-derived; replan
      const int first = modes_.first();
      KahanSum s;
      double mag = 0.0;
      for (int n = first; n <= N; ++n) {
        const double term = mult(modes_.eigen(n)) * cx[n - first] * cy[n - first];
        s.add(term);
        mag += std::abs(term);
      }
      KernelValue kv{s.value(), N - first + 1, scale * tail(N), mag};
      if (rel_tol > 0.0 && kv.tail_bound > rel_tol * std::abs(kv.value) && kv.value != 0.0) {
        const double next = 0.5 * rel_tol * std::abs(kv.value);
        if (next < target) {
          target = next;
          continue;
        }
      }
      return kv;
    }
    throw TailBoundFailure("kernel series: tail certification did not settle");
  }

  template <class Mult>
  KernelValue regularized_sum(double x, double y, Mult&& mult, double delta, double tol,
                              double scale, const RegularizerOptions& opt) {
    for (int levels = opt.levels; levels <= opt.max_levels; ++levels) {
      const Ladder lad = ladder(delta, tol, scale, opt, levels);
      const int N = lad.terms.back();
      if (N < 0) break;
      const std::vector<double>& cx = column(x, N);
      const std::vector<double>& cy = column(y, N);
      const int first = modes_.first();
      std::vector<KahanSum> acc(lad.eps.size());
      double mag = 0.0;
      for (int n = first; n <= N; ++n) {
        const double e = modes_.eigen(n);
        const double term = mult(e) * cx[n - first] * cy[n - first];
        for (std::size_t k = 0; k < lad.eps.size(); ++k) {
          if (n <= lad.terms[k]) {
            const double v = std::exp(-lad.eps[k] * e) * term;
            acc[k].add(v);
            if (k + 1 == lad.eps.size()) mag += std::abs(v);
          }
        }
      }
      std::vector<double> s(acc.size());
      for (std::size_t k = 0; k < acc.size(); ++k) s[k] = acc[k].value();
      const auto [value, err] = detail::extrapolate_to_zero(lad.eps, s);
      if (err <= tol || levels == opt.max_levels) {
        if (err > tol) {
          throw TailBoundFailure("regularized potential sum did not reach tolerance");
        }
        return {value, N - first + 1, err, mag};
      }
    }
    throw TailBoundFailure("regularized potential sum exceeded the term cap");
  }

  void certify() {
    const int first = std::max(1, modes_.first());
    const int last_probe = first + kProbeModes - 1;
    ensure(last_probe);
    std::vector<double> col(last_probe - modes_.first() + 1);
    double m = 0.0;
    for (int i = 0; i < kProbeGrid; ++i) {
      const double x = (i + 0.5) / kProbeGrid;
      modes_.column(x, first, last_probe, col.data());
      const double w = modes_.weight(x);
      for (int j = 0; j <= last_probe - first; ++j) m = std::max(m, std::abs(col[j]) / w);
    }
    sup_ = 1.5 * m;
  }

  Modes modes_;
  double sup_ = 0.0;
  std::map<double, std::vector<double>> cols_;
};

using DiniEngine = SeriesEngine<DiniModes>;
using JacobiEngine = SeriesEngine<JacobiModes>;

inline DiniEngine make_dini_engine(const SpectralParams& p, int n_max = 64) {
  return DiniEngine(DiniModes(BasisSpec::build(p, n_max)));
}

inline JacobiEngine make_jacobi_engine(const JacobiParams& jp, int k_max = 64) {
  return JacobiEngine(JacobiModes(JacobiBasis::build(jp, k_max)));
}

// ---- request-level API -------------------------------------------------------

struct KernelRequest {
  KernelKind kind = KernelKind::heat;
  SpectralParams params;      // Dini kernels
  JacobiParams jacobi;        // Jacobi heat kernel
  double time_or_sigma = 0.1;
  double shift = 1.0;         // d_nu for shifted Poisson and Bessel potentials
  std::vector<std::array<double, 2>> grid;
  double tol = 1e-10;
  double rel_tol = 0.0;
};

inline std::vector<KernelValue> evaluate(const KernelRequest& req) {
  std::vector<KernelValue> out;
  out.reserve(req.grid.size());
  if (req.kind == KernelKind::jacobi_heat) {
    JacobiEngine eng = make_jacobi_engine(req.jacobi);
    for (const auto& pt : req.grid) {
      out.push_back(eng.heat(req.time_or_sigma, pt[0], pt[1], req.tol, req.rel_tol));
    }
    return out;
  }
  DiniEngine eng = make_dini_engine(req.params);
  const double s = req.time_or_sigma;
  for (const auto& pt : req.grid) {
    const double x = pt[0], y = pt[1];
    switch (req.kind) {
      case KernelKind::heat: out.push_back(eng.heat(s, x, y, req.tol, req.rel_tol)); break;
      case KernelKind::poisson: out.push_back(eng.poisson(s, 0.0, x, y, req.tol, req.rel_tol)); break;
      case KernelKind::poisson_shifted:
        out.push_back(eng.poisson(s, req.shift, x, y, req.tol, req.rel_tol));
        break;
      case KernelKind::riesz_potential:
        if (!(req.params.nu > -0.5)) throw SpectrumNotPositive("Riesz potential requires nu > -1/2");
        out.push_back(eng.potential(s, 0.0, x, y, req.tol));
        break;
      case KernelKind::bessel_potential: out.push_back(eng.potential(s, req.shift, x, y, req.tol)); break;
      default: throw DomainError("unsupported kernel kind");
    }
  }
  return out;
}

inline std::vector<KernelValue> heat_kernel(KernelRequest req) {
  req.kind = req.kind == KernelKind::jacobi_heat ? KernelKind::jacobi_heat : KernelKind::heat;
  return evaluate(req);
}

inline std::vector<KernelValue> jacobi_heat_kernel(KernelRequest req) {
  req.kind = KernelKind::jacobi_heat;
  return evaluate(req);
}

inline std::vector<KernelValue> poisson_kernel(KernelRequest req) {
  if (req.kind != KernelKind::poisson_shifted) req.kind = KernelKind::poisson;
  return evaluate(req);
}

inline std::vector<KernelValue> potential_kernel(KernelRequest req) {
  if (req.kind != KernelKind::riesz_potential) req.kind = KernelKind::bessel_potential;
  return evaluate(req);
}

// ---- semigroup action -----------------------------------------------------------

// T_t f at the points xs for the heat semigroup of the Dini operator.
inline std::vector<double> semigroup_apply(const std::function<double(double)>& f,
                                           const SpectralParams& p, double t,
                                           const std::vector<double>& xs, double tol = 1e-9) {
  if (!(t > 0.0)) throw DomainError("semigroup_apply needs t > 0");
  DiniEngine eng = make_dini_engine(p);
  const double shift = eng.modes().shift();
  // ||f||_2 and the sup weight over xs bound the tail via Cauchy-Schwarz
  const QuadratureRule rule0 = default_rule(p);
  const double fnorm = std::sqrt(rule0.integrate([&](double x) { return f(x) * f(x); }));
  double wmax = 0.0;
  for (double x : xs) wmax = std::max(wmax, eng.modes().weight(x));
  const double scale = eng.sup_const() * wmax * fnorm;
  auto tail = [&](int N) { return scale * std::sqrt(detail::gauss_tail(2.0 * t, shift, N)); };
  const int first_tail = std::max(eng.modes().first(), static_cast<int>(std::ceil(shift)) + 1);
  const int N = detail::plan_terms(tail, first_tail, tol, 200000);
  if (N < 0) throw TailBoundFailure("semigroup_apply: truncation too long");
  eng.ensure(N);
  const BasisSpec& b = eng.modes().basis();
  const double zN = b.zeros().zero(N);
  int panels = 16;
  while (panels < zN / 25.0) panels *= 2;
  const QuadratureRule rule = default_rule(p, p.nu + 0.5, 32 * panels);
  const std::vector<double> a = dini_coefficients(f, b, N, rule);
  std::vector<double> out;
  out.reserve(xs.size());
  std::vector<double> col;
  for (double x : xs) {
    b.column(x, N, col);
    KahanSum s;
    for (int n = b.n_min(); n <= N; ++n) {
      const int i = n - b.n_min();
      s.add(std::exp(-t * b.eigenvalue(n)) * a[i] * col[i]);
    }
    out.push_back(s.value());
  }
  return out;
}

}  // namespace dini
