// dini: command-line front end for zero tables, kernel grids and the
// verification sweeps.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dini/dini.hpp"

namespace {

using namespace dini;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

const std::vector<double> kDefaultNu{-0.9, -0.75, -0.5, 0.0, 0.5, 1.5, 3.0};

struct Output {
  std::string path;
  std::string format = "json";
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty() || path == "-") return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open " + path);
    }
    return file;
  }
};

void add_output(CLI::App* c, Output& o, const std::string& default_format) {
  o.format = default_format;
  c->add_option("-o,--out", o.path, "Output file (default stdout)");
  c->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::string g17(double v) { return format_g17(v); }

void fail(const std::string& msg) { std::cerr << "FAIL: " << msg << '\n'; }

// ---- zeros ---------------------------------------------------------------------

struct ZerosCmd {
  double nu = 0.0, h = 0.5, tol = 1e-13;
  int n_max = 50;
  Output out;

  int run() {
    const ZeroTable t = cached_zero_table(SpectralParams::make(nu, h), n_max, tol);
    std::ostream& os = out.stream();
    if (out.format == "csv") {
      write_zero_table_csv(os, t);
      return kPass;
    }
    os << "{\"nu\":" << g17(nu) << ",\"H\":" << g17(h) << ",\"regime\":\""
       << regime_name(t.params().regime) << "\",\"tol\":" << g17(t.tol()) << ",\"zeros\":[";
    for (int n = t.n_min(); n <= t.n_max(); ++n) {
      if (n > t.n_min()) os << ',';
      os << "{\"n\":" << n << ",\"zero\":" << g17(t.zero(n)) << '}';
    }
    os << "]}\n";
    return kPass;
  }
};

// ---- basis-check -------------------------------------------------------------------

struct BasisCheckCmd {
  std::vector<double> nus = kDefaultNu;
  std::vector<double> hs{-1.0, 0.0, 0.5, 2.0};
  int n_max = 40;
  double threshold = 1e-8;
  Output out;

  int run() {
    bool ok = true;
    std::ostream& os = out.stream();
    if (out.format == "csv") os << "nu,H,n_max,gram_deviation,pass\n";
    else os << "[";
    bool first = true;
    for (double nu : nus) {
      for (double h : hs) {
        const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, h), n_max);
        const double dev = gram_deviation(b, n_max);
        const bool pass = dev <= threshold;
        if (!pass) {
          ok = false;
          fail("Gram matrix deviation " + g17(dev) + " > " + g17(threshold) + " at nu=" + g17(nu) +
               " H=" + g17(h));
        }
        if (out.format == "csv") {
          os << g17(nu) << ',' << g17(h) << ',' << n_max << ',' << g17(dev) << ','
             << (pass ? 1 : 0) << '\n';
        } else {
          os << (first ? "" : ",") << "{\"nu\":" << g17(nu) << ",\"H\":" << g17(h)
             << ",\"n_max\":" << n_max << ",\"gram_deviation\":" << g17(dev)
             << ",\"pass\":" << (pass ? "true" : "false") << '}';
        }
        first = false;
      }
    }
    if (out.format == "json") os << "]\n";
    return ok ? kPass : kFail;
  }
};

// ---- kernel ------------------------------------------------------------------------

struct KernelCmd {
  std::string kind = "heat";
  double nu = 0.0, h = 0.5, alpha = -0.5, beta = -0.5, t = 0.1, d = 1.0, tol = 1e-10;
  int grid = 50;
  bool refine = false;
  std::string envelope = "none";
  Output out;

  // Per-point kernel/envelope ratios on the same grid.
  int run_ratio() {
    const PointGrid g = tensor_grid(axis_points(grid, refine));
    RatioOptions o;
    o.shift = d;
    RatioReport r;
    if (kind == "jacobi-heat") {
      if (envelope == "long") throw DomainError("no large-time envelope for jacobi-heat");
      JacobiEngine eng = make_jacobi_engine(JacobiParams::make(alpha, beta));
      r = jacobi_ratio_report(eng, Envelope::jacobi_short(alpha, beta), t, g, o);
    } else {
      DiniEngine eng = make_dini_engine(SpectralParams::make(nu, h));
      const ZeroTable& z = eng.modes().basis().zeros();
      const bool lng = envelope == "long";
      if (kind == "heat") {
        r = heat_ratio_report(eng, lng ? Envelope::heat_long(z) : Envelope::heat_short(nu), t, g, o);
      } else if (kind == "poisson" || kind == "poisson-shifted") {
        const double dd = kind == "poisson" ? 0.0 : d;
        r = poisson_ratio_report(eng, lng ? Envelope::poisson_long(z, dd) : Envelope::poisson_short(nu),
                                 t, dd, g, o);
      } else {
        r = potential_ratio_report(eng, t, kind == "riesz", g, o);
      }
    }
    std::ostream& os = out.stream();
    if (out.format == "csv") {
      write_csv(os, r);
    } else {
      write_json(os, r);
      os << '\n';
    }
    return kPass;
  }

  int run() {
    if (envelope != "none") return run_ratio();
    KernelRequest req;
    req.params = SpectralParams::make(nu, h);
    req.jacobi = JacobiParams::make(alpha, beta);
    req.time_or_sigma = t;
    req.shift = d;
    req.tol = tol;
    if (kind == "heat") req.kind = KernelKind::heat;
    else if (kind == "jacobi-heat") req.kind = KernelKind::jacobi_heat;
    else if (kind == "poisson") req.kind = KernelKind::poisson;
    else if (kind == "poisson-shifted") req.kind = KernelKind::poisson_shifted;
    else if (kind == "riesz") req.kind = KernelKind::riesz_potential;
    else req.kind = KernelKind::bessel_potential;
    const bool potential =
        req.kind == KernelKind::riesz_potential || req.kind == KernelKind::bessel_potential;
    const PointGrid all = tensor_grid(axis_points(grid, refine));
    for (const auto& p : all)
      if (!potential || p[0] != p[1]) req.grid.push_back(p);
    const std::vector<KernelValue> vals = evaluate(req);
    std::ostream& os = out.stream();
    if (out.format == "csv") {
      os << "x,y,value,n_terms,tail_bound\n";
      for (std::size_t i = 0; i < vals.size(); ++i) {
        os << g17(req.grid[i][0]) << ',' << g17(req.grid[i][1]) << ',' << g17(vals[i].value) << ','
           << vals[i].n_terms << ',' << g17(vals[i].tail_bound) << '\n';
      }
      return kPass;
    }
    os << "{\"kind\":\"" << kernel_kind_name(req.kind) << "\",\"nu\":" << g17(nu)
       << ",\"H\":" << g17(h) << ",\"t_or_sigma\":" << g17(t) << ",\"points\":[";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      os << (i ? "," : "") << '[' << g17(req.grid[i][0]) << ',' << g17(req.grid[i][1]) << ','
         << g17(vals[i].value) << ']';
    }
    os << "]}\n";
    return kPass;
  }
};

// ---- verify-sandwich ------------------------------------------------------------------

struct SandwichCmd {
  std::vector<double> nus{2.0};
  std::vector<double> ts{0.1};
  int grid = 20;
  double tol = 1e-12, slack = 1e-7;
  Output out;

  int run() {
    bool ok = true;
    std::ostream& os = out.stream();
    const PointGrid g = tensor_grid(axis_points(grid, false));
    if (out.format == "json" && nus.size() > 1) os << '[';
    for (std::size_t i = 0; i < nus.size(); ++i) {
      const SandwichReport r = sandwich_margins(nus[i], ts, g, tol, slack);
      if (!r.ok()) {
        ok = false;
        const bool lower = r.worst_lower < -slack;
        const SandwichPoint& p = lower ? r.worst_lower_at : r.worst_upper_at;
        fail(std::string(lower ? "lower" : "upper") + " sandwich inequality at nu=" + g17(nus[i]) +
             " t=" + g17(p.t) + " x=" + g17(p.x) + " y=" + g17(p.y));
      }
      if (out.format == "csv") {
        write_csv(os, r);
      } else {
        if (i) os << ',';
        write_json(os, r);
      }
    }
    if (out.format == "json") os << (nus.size() > 1 ? "]\n" : "\n");
    return ok ? kPass : kFail;
  }
};

// ---- verify-envelopes ------------------------------------------------------------------

struct EnvelopesCmd {
  std::vector<double> nus = kDefaultNu;
  std::string kind = "heat";
  std::vector<double> short_ts{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  std::vector<double> long_ts{1.0, 2.0, 3.0, 5.0};
  std::vector<double> sigmas{0.3, 0.5, 1.0, 1.6};
  int grid = 30;
  double max_spread = 1e3, stability = 0.25, d = 1.0;
  Output out;

  struct Family {
    std::string label;
    double nu;
    std::vector<RatioReport> coarse, fine;
  };

  static double spread(const std::vector<RatioReport>& rs) {
    double lo = rs.front().min_ratio, hi = rs.front().max_ratio;
    for (const auto& r : rs) {
      lo = std::min(lo, r.min_ratio);
      hi = std::max(hi, r.max_ratio);
    }
    return hi / lo;
  }

  int run() {
    std::vector<Family> fams;
    for (double nu : nus) {
      const SpectralParams p = SpectralParams::make(nu, 0.5);
      DiniEngine eng = make_dini_engine(p);
      for (int pass = 0; pass < 2; ++pass) {
        const int n = pass == 0 ? grid : 2 * grid;
        if (kind == "heat") {
          const PointGrid g = tensor_grid(axis_points(n, true));
          if (pass == 0) {
            fams.push_back({"heat_short", nu, {}, {}});
            fams.push_back({"heat_long", nu, {}, {}});
          }
          Family& fs = fams[fams.size() - 2];
          Family& fl = fams.back();
          for (double t : short_ts)
            (pass ? fs.fine : fs.coarse).push_back(heat_ratio_report(eng, Envelope::heat_short(nu), t, g));
          const Envelope el = Envelope::heat_long(eng.modes().basis().zeros());
          for (double t : long_ts)
            (pass ? fl.fine : fl.coarse).push_back(heat_ratio_report(eng, el, t, g));
        } else if (kind == "poisson") {
          const PointGrid g = tensor_grid(axis_points(n, true, 1e-2));
          const double dd = nu < -0.5 ? d : 0.0;
          if (pass == 0) fams.push_back({"poisson_short", nu, {}, {}});
          for (double t : short_ts) {
            if (t < 1e-2) continue;
            (pass ? fams.back().fine : fams.back().coarse)
                .push_back(poisson_ratio_report(eng, Envelope::poisson_short(nu), t, dd, g));
          }
        } else {
          const PointGrid g = tensor_grid(axis_points(n, true, 1e-2));
          for (int riesz = 0; riesz < 2; ++riesz) {
            if (riesz && !(nu > -0.5)) continue;
            if (pass == 0) fams.push_back({riesz ? "riesz_potential" : "bessel_potential", nu, {}, {}});
            Family& f = fams.back();
            for (double s : sigmas)
              (pass ? f.fine : f.coarse).push_back(potential_ratio_report(eng, s, riesz, g));
          }
        }
      }
    }
    bool ok = true;
    std::ostream& os = out.stream();
    if (out.format == "csv") {
      std::vector<RatioReport> all;
      for (const auto& f : fams) all.insert(all.end(), f.coarse.begin(), f.coarse.end());
      write_sweep_csv(os, all);
    } else {
      os << '[';
    }
    for (std::size_t i = 0; i < fams.size(); ++i) {
      const Family& f = fams[i];
      const double sc = spread(f.coarse), sf = spread(f.fine);
      const double change = std::abs(sf - sc) / sc;
      const bool pass = sc <= max_spread && sf <= max_spread && change <= stability;
      if (!pass) {
        ok = false;
        fail(f.label + " nu=" + g17(f.nu) + ": ratio spread " + g17(sc) + " (coarse) " + g17(sf) +
             " (fine), limit " + g17(max_spread) + ", change " + g17(change));
      }
      if (out.format == "json") {
        os << (i ? "," : "") << "{\"family\":\"" << f.label << "\",\"nu\":" << g17(f.nu)
           << ",\"spread_coarse\":" << g17(sc) << ",\"spread_fine\":" << g17(sf)
           << ",\"relative_change\":" << g17(change) << ",\"pass\":" << (pass ? "true" : "false")
           << ",\"reports\":[";
        for (std::size_t k = 0; k < f.coarse.size(); ++k) {
          if (k) os << ',';
          write_json(os, f.coarse[k]);
        }
        os << "]}";
      }
    }
    if (out.format == "json") os << "]\n";
    return ok ? kPass : kFail;
  }
};

// ---- verify-rellich ----------------------------------------------------------------------

struct RellichCmd {
  std::vector<double> nus{1.2, 2.0, 5.0};
  int trials = 100, terms = 5, max_index = 30;
  unsigned long long seed = 20240601ULL;
  double slack = 1e-6;
  Output out;

  int run() {
    bool ok = true;
    std::ostream& os = out.stream();
    if (out.format == "csv") os << "nu,trial,lhs,rellich_rhs,hardy_rhs\n";
    else os << '[';
    for (std::size_t i = 0; i < nus.size(); ++i) {
      const double nu = nus[i];
      const BasisSpec b = BasisSpec::build(SpectralParams::make(nu, 0.5), max_index);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> pick(0, max_index - 1);
      std::normal_distribution<double> normal;
      int violations = 0;
      double worst_rellich = 0.0, worst_hardy = 0.0;
      for (int k = 0; k < trials; ++k) {
        std::vector<double> c(max_index, 0.0);
        for (int j = 0; j < terms; ++j) c[pick(rng)] += normal(rng);
        const RellichResult r = rellich_check(b, c);
        if (r.lhs > 0.0) {
          worst_rellich = std::max(worst_rellich, r.lhs / r.rhs);
          worst_hardy = std::max(worst_hardy, r.lhs / r.hardy_rhs);
        }
        if (!r.rellich_holds(slack) || !r.hardy_holds(slack)) {
          ++violations;
          fail(std::string(r.rellich_holds(slack) ? "Hardy" : "Rellich") +
               " inequality at nu=" + g17(nu) + " trial " + std::to_string(k) + ": lhs " +
               g17(r.lhs) + " rhs " + g17(r.rellich_holds(slack) ? r.hardy_rhs : r.rhs));
        }
        if (out.format == "csv") {
          os << g17(nu) << ',' << k << ',' << g17(r.lhs) << ',' << g17(r.rhs) << ','
             << g17(r.hardy_rhs) << '\n';
        }
      }
      if (violations) ok = false;
      if (out.format == "json") {
        os << (i ? "," : "") << "{\"nu\":" << g17(nu) << ",\"trials\":" << trials
           << ",\"violations\":" << violations << ",\"max_rellich_ratio\":" << g17(worst_rellich)
           << ",\"max_hardy_ratio\":" << g17(worst_hardy) << '}';
      }
    }
    if (out.format == "json") os << "]\n";
    return ok ? kPass : kFail;
  }
};

// ---- verify-zero-bound ---------------------------------------------------------------------

struct ZeroBoundCmd {
  int nu_grid = 32;
  double residual_tol = 1e-10;
  Output out;

  int run() {
    bool ok = true;
    std::ostream& os = out.stream();
    if (out.format == "csv") os << "nu,z0,x0,residual,pass\n";
    else os << '[';
    const double lo = -1.0 + 1e-3, hi = -0.5 - 1e-3;
    for (int i = 0; i < nu_grid; ++i) {
      const double nu = nu_grid == 1 ? lo : lo + (hi - lo) * i / (nu_grid - 1);
      const SpectralParams p = SpectralParams::make(nu, 0.5);
      const ZeroTable t = build_zero_table(p, 1);
      const double z0 = t.zero(0), x0 = x0_bound(nu);
      // residual of I_{nu+1}/I_nu = -(nu + 1/2)/x, scaled by I_nu(z0)
      const double res = std::abs(bessel_ih(p, z0)) / std::abs(bessel_i(nu, z0));
      const bool pass = z0 < x0 && x0 < 0.5 && res <= residual_tol;
      if (!pass) {
        ok = false;
        fail("z0 < x0 < 1/2 at nu=" + g17(nu) + ": z0=" + g17(z0) + " x0=" + g17(x0) +
             " residual=" + g17(res));
      }
      if (out.format == "csv") {
        os << g17(nu) << ',' << g17(z0) << ',' << g17(x0) << ',' << g17(res) << ','
           << (pass ? 1 : 0) << '\n';
      } else {
        os << (i ? "," : "") << "{\"nu\":" << g17(nu) << ",\"z0\":" << g17(z0)
           << ",\"x0\":" << g17(x0) << ",\"residual\":" << g17(res)
           << ",\"pass\":" << (pass ? "true" : "false") << '}';
      }
    }
    if (out.format == "json") os << "]\n";
    return ok ? kPass : kFail;
  }
};

// ---- convergence -----------------------------------------------------------------------------

struct ConvergenceCmd {
  std::vector<double> nus{-0.5, 1.0};
  std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  int points = 200;
  double margin = 0.0;  // > 0: equispaced on [margin, 1 - margin] instead of cell midpoints
  double final_tol = 1e-3;
  Output out;

  int run() {
    bool ok = true;
    auto f = [](double x) { return x * (1.0 - x) * (1.0 - x); };
    std::vector<double> xs;
    if (margin > 0.0) {
      for (int i = 0; i < points; ++i) xs.push_back(margin + (1.0 - 2.0 * margin) * i / (points - 1));
    } else {
      xs = axis_points(points, false);
    }
    std::ostream& os = out.stream();
    if (out.format == "csv") os << "nu,t,sup_error\n";
    else os << '[';
    for (std::size_t k = 0; k < nus.size(); ++k) {
      const SpectralParams p = SpectralParams::make(nus[k], 0.5);
      std::vector<double> errs;
      for (double t : ts) {
        const std::vector<double> v = semigroup_apply(f, p, t, xs);
        double e = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) e = std::max(e, std::abs(v[i] - f(xs[i])));
        errs.push_back(e);
        if (out.format == "csv") os << g17(nus[k]) << ',' << g17(t) << ',' << g17(e) << '\n';
      }
      bool monotone = true;
      for (std::size_t i = 1; i < errs.size(); ++i) monotone = monotone && errs[i] < errs[i - 1];
      const bool pass = monotone && errs.back() < final_tol;
      if (!pass) {
        ok = false;
        fail("sup |T_t f - f| at nu=" + g17(nus[k]) +
             (monotone ? " ends at " + g17(errs.back()) : std::string(" is not decreasing in t")));
      }
      if (out.format == "json") {
        os << (k ? "," : "") << "{\"nu\":" << g17(nus[k]) << ",\"rows\":[";
        for (std::size_t i = 0; i < errs.size(); ++i)
          os << (i ? "," : "") << "{\"t\":" << g17(ts[i]) << ",\"sup_error\":" << g17(errs[i]) << '}';
        os << "],\"pass\":" << (pass ? "true" : "false") << '}';
      }
    }
    if (out.format == "json") os << "]\n";
    return ok ? kPass : kFail;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Dini spectral toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  ZerosCmd zc;
  auto* z = app.add_subcommand("zeros", "Tabulate the zeros z_n of J_{nu,H}");
  z->add_option("--nu", zc.nu)->required();
  z->add_option("--h", zc.h)->capture_default_str();
  z->add_option("--n-max", zc.n_max)->capture_default_str()->check(CLI::PositiveNumber);
  z->add_option("--tol", zc.tol)->capture_default_str();
  add_output(z, zc.out, "csv");

  BasisCheckCmd bc;
  auto* b = app.add_subcommand("basis-check", "Gram matrix deviation of the Dini system");
  b->add_option("--nu", bc.nus, "Orders (default sweep grid)");
  b->add_option("--h", bc.hs, "Robin parameters");
  b->add_option("--n-max", bc.n_max)->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--threshold", bc.threshold)->capture_default_str();
  add_output(b, bc.out, "json");

  KernelCmd kc;
  auto* k = app.add_subcommand("kernel", "Evaluate a kernel on a grid");
  k->add_option("--kind", kc.kind)
      ->check(CLI::IsMember({"heat", "jacobi-heat", "poisson", "poisson-shifted", "riesz", "bessel"}))
      ->capture_default_str();
  k->add_option("--nu", kc.nu)->capture_default_str();
  k->add_option("--h", kc.h)->capture_default_str();
  k->add_option("--alpha", kc.alpha)->capture_default_str();
  k->add_option("--beta", kc.beta)->capture_default_str();
  k->add_option("--t,--sigma", kc.t, "Time, or potential order")->capture_default_str();
  k->add_option("--d", kc.d, "Shift for poisson-shifted and bessel")->capture_default_str();
  k->add_option("--grid", kc.grid)->capture_default_str()->check(CLI::PositiveNumber);
  k->add_flag("--refine", kc.refine, "Geometric refinement towards 0 and 1");
  k->add_option("--envelope", kc.envelope, "Emit kernel/envelope ratios instead of values")
      ->check(CLI::IsMember({"none", "short", "long"}))
      ->capture_default_str();
  k->add_option("--tol", kc.tol)->capture_default_str();
  add_output(k, kc.out, "csv");

  SandwichCmd sc;
  auto* s = app.add_subcommand("verify-sandwich", "Two-sided bound of G by the Jacobi kernel");
  s->add_option("--nu", sc.nus)->capture_default_str();
  s->add_option("--t", sc.ts)->capture_default_str();
  s->add_option("--grid", sc.grid)->capture_default_str()->check(CLI::PositiveNumber);
  s->add_option("--tol", sc.tol)->capture_default_str();
  s->add_option("--slack", sc.slack)->capture_default_str();
  add_output(s, sc.out, "json");

  EnvelopesCmd ec;
  auto* e = app.add_subcommand("verify-envelopes", "Kernel/envelope ratio sweeps");
  e->add_option("--nu", ec.nus, "Orders (default sweep grid)");
  e->add_option("--kind", ec.kind)
      ->check(CLI::IsMember({"heat", "poisson", "potential"}))
      ->capture_default_str();
  e->add_option("--grid", ec.grid, "Coarse grid size; the fine grid doubles it")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  e->add_option("--t", ec.short_ts, "Short-time values");
  e->add_option("--t-long", ec.long_ts, "Large-time values");
  e->add_option("--sigma", ec.sigmas, "Potential orders");
  e->add_option("--max-spread", ec.max_spread)->capture_default_str();
  add_output(e, ec.out, "json");

  RellichCmd rc;
  auto* r = app.add_subcommand("verify-rellich", "Rellich and Hardy inequalities on random trials");
  r->add_option("--nu", rc.nus)->capture_default_str();
  r->add_option("--trials", rc.trials)->capture_default_str()->check(CLI::PositiveNumber);
  r->add_option("--terms", rc.terms)->capture_default_str()->check(CLI::PositiveNumber);
  r->add_option("--seed", rc.seed)->capture_default_str();
  add_output(r, rc.out, "json");

  ZeroBoundCmd zb;
  auto* w = app.add_subcommand("verify-zero-bound", "z_0 < x_0 < 1/2 for nu in (-1,-1/2)");
  w->add_option("--nu-grid", zb.nu_grid)->capture_default_str()->check(CLI::PositiveNumber);
  add_output(w, zb.out, "json");

  ConvergenceCmd cc;
  auto* c = app.add_subcommand("convergence", "sup |T_t f - f| for f = x(1-x)^2 as t -> 0");
  c->add_option("--nu", cc.nus)->capture_default_str();
  c->add_option("--t", cc.ts)->capture_default_str();
  c->add_option("--points", cc.points)->capture_default_str()->check(CLI::Range(2, 100000));
  c->add_option("--final-tol", cc.final_tol, "Required sup error at the last t")->capture_default_str();
  c->add_option("--margin", cc.margin, "Keep the grid inside [margin, 1-margin]")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.49));
  add_output(c, cc.out, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*z) return zc.run();
    if (*b) return bc.run();
    if (*k) return kc.run();
    if (*s) return sc.run();
    if (*e) return ec.run();
    if (*r) return rc.run();
    if (*w) return zb.run();
    if (*c) return cc.run();
  } catch (const DomainError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const SpectrumNotPositive& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const ShiftTooSmall& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "FAIL: " << err.what() << '\n';
    return kFail;
  }
  return kUsage;
}
