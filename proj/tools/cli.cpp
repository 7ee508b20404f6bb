#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "et6/config.hpp"
#include "et6/eigenstructure.hpp"
#include "et6/oracle.hpp"
#include "et6/presets.hpp"
#include "et6/solver.hpp"

namespace et6::cli {
namespace {

namespace fs = std::filesystem;

std::string num(double x, int precision = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

struct Overrides {
  std::optional<std::string> D, m, kB, tau, rho, T, p, vx, Z, N, cfl, t_end, order,
      kind, boundary, seed;
  std::vector<std::string> assignments;
};

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--D", o.D, "degrees of freedom");
  app->add_option("--m", o.m, "molecular mass");
  app->add_option("--kB", o.kB, "Boltzmann constant");
  app->add_option("--tau", o.tau, "relaxation time");
  app->add_option("--rho", o.rho, "density");
  app->add_option("--T", o.T, "temperature");
  app->add_option("--p", o.p, "pressure (sets T from rho)");
  app->add_option("--vx", o.vx, "velocity");
  app->add_option("--Pi0-over-p,--Z", o.Z, "dynamic pressure ratio Pi/p");
  app->add_option("--N", o.N, "cells");
  app->add_option("--cfl", o.cfl, "CFL number");
  app->add_option("--t-end", o.t_end, "end time");
  app->add_option("--order", o.order, "1 or 2");
  app->add_option("--kind", o.kind, "riemann | smooth_wave | uniform_relaxation");
  app->add_option("--boundary", o.boundary, "periodic | outflow | reflective");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--set", o.assignments, "section.key=value, repeatable");
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  const std::pair<const std::optional<std::string>*, const char*> table[] = {
      {&o.D, "gas.D"},          {&o.m, "gas.m"},
      {&o.kB, "gas.kB"},        {&o.tau, "gas.tau"},
      {&o.rho, "scenario.rho"}, {&o.T, "scenario.T"},
      {&o.vx, "scenario.vx"},   {&o.Z, "scenario.Pi_over_p"},
      {&o.N, "scenario.N"},     {&o.cfl, "scenario.cfl"},
      {&o.t_end, "scenario.t_end"}, {&o.order, "scenario.order"},
      {&o.kind, "scenario.kind"},   {&o.boundary, "scenario.boundary"},
      {&o.seed, "check.seed"}};
  for (const std::string& a : o.assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ConfigError(a + ": expected section.key=value");
    cfg.set(a.substr(0, eq), a.substr(eq + 1));
  }
  for (const auto& [value, key] : table) {
    if (*value) cfg.set(key, **value);
  }
  if (o.p) {
    const double p = std::stod(*o.p);
    if (!(p > 0.0)) throw ConfigError("--p: must be positive");
    cfg.set("scenario.T", num(p / (cfg.gas.R() * cfg.scenario.rho), 17));
  }
}

class Verdicts {
 public:
  Verdicts(std::ostream& out) : out_(out) {}

  void add(const std::string& name, bool pass, const std::string& detail,
           const std::string& file = "") {
    out_ << (pass ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out_ << "  " << detail;
    out_ << '\n';
    if (!pass) {
      ok_ = false;
      if (!file.empty()) failing_files_.push_back(file);
    }
  }
  void note(const std::string& text) { out_ << "     " << text << '\n'; }

  int finish(std::ostream& err) const {
    if (ok_) return kExitPass;
    if (!failing_files_.empty()) {
      err << "failing reports:\n";
      for (const std::string& f : failing_files_) err << "  " << f << '\n';
    }
    return kExitFail;
  }

 private:
  std::ostream& out_;
  bool ok_ = true;
  std::vector<std::string> failing_files_;
};

State6 configured_state(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  return state_from_ratio(sc.rho, Vec3(sc.vx, 0, 0), sc.T, sc.Pi_over_p, cfg.gas);
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void write_oracle_rows(std::ostream& os, const std::vector<OracleEntry>& entries,
                       const std::string& prefix, int precision) {
  for (const OracleEntry& e : entries) {
    os << prefix << e.quantity << ',' << num(e.closed_form, precision) << ','
       << num(e.quadrature, precision) << ',' << num(e.rel_err, 4) << ',' << e.rule << '\n';
  }
}

int cmd_check(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const State6 s = configured_state(cfg);
  const CheckConfig& c = cfg.check;
  const OracleReport moments = oracle_constraint_check(s, cfg.gas, c.quad, c.moment_tol);
  const OracleReport fluxes = oracle_flux_check(s, cfg.gas, c.quad, c.oracle_tol);
  const OracleEntry entropy = oracle_entropy_entry(s, cfg.gas, c.quad);

  const fs::path table = dir / "check_oracle.csv";
  {
    std::ofstream f = open_csv(table);
    f << "quantity,closed_form,quadrature,rel_err,rule\n";
    write_oracle_rows(f, moments.entries, "", cfg.output.precision);
    write_oracle_rows(f, fluxes.entries, "", cfg.output.precision);
    write_oracle_rows(f, {entropy}, "", cfg.output.precision);
  }
  v.add("constraint moments", moments.passed(),
        "max rel err " + num(moments.max_rel_err(), 3) + " (tol " + num(c.moment_tol, 3) + ")", table.string());
  if (!moments.passed()) v.note(moments.failure_summary());
  v.add("closed fluxes", fluxes.passed(),
        "max rel err " + num(fluxes.max_rel_err(), 3) + " (tol " + num(c.oracle_tol, 3) + ")", table.string());
  if (!fluxes.passed()) v.note(fluxes.failure_summary());
  v.add("entropy density", entropy.rel_err <= c.oracle_tol,
        "h = " + num(entropy.closed_form, 10) + ", rel err " + num(entropy.rel_err, 3), table.string());

  const std::vector<double> betas{0.001, 0.01, 0.05};
  const MepProbeReport probe = mep_optimality_probe(s, cfg.gas, betas, c.quad);
  const fs::path probe_path = dir / "check_mep.csv";
  {
    std::ofstream f = open_csv(probe_path);
    f << "beta,h,converged,iterations,residual\n";
    for (const MepProbePoint& p : probe.points) {
      f << num(p.beta) << ',' << num(p.h, cfg.output.precision) << ',' << (p.converged ? 1 : 0)
        << ',' << p.iterations << ',' << num(p.residual, 4) << '\n';
    }
  }
  if (probe.inconclusive) {
    v.note("entropy-maximum probe inconclusive: a constrained Newton solve did not converge");
  } else {
    v.add("entropy maximum", probe.maximum_confirmed && probe.monotone,
          "h(beta) < h(0) for beta in {0.001, 0.01, 0.05}", probe_path.string());
  }
  out << "wrote " << table.string() << ", " << probe_path.string() << '\n';
  return v.finish(err);
}

int cmd_eigen(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const GasSpec& spec = cfg.gas;
  const State6 s = configured_state(cfg);
  const Conserved6 u = conserved_from_primitive(s, spec);
  const Vec3 n = Vec3::UnitX();
  const double p = pressure(s, spec);
  const double Z = s.Pi / p;
  const int prec = cfg.output.precision;

  WaveFan fan;
  try {
    fan = wave_fan(u, n, spec, cfg.check.speed_tol);
  } catch (const HyperbolicityLoss& e) {
    v.add("real characteristic speeds", false, e.what());
    return v.finish(err);
  }
  v.add("real characteristic speeds", true, "max |Im|/scale " + num(fan.max_imaginary, 3));
  out << "speeds:";
  for (double c : fan.speeds) out << ' ' << num(c, 8);
  out << '\n';

  const bool equilibrium = Z == 0.0;
  std::optional<KConditionReport> kc;
  if (equilibrium) {
    const double c = std::sqrt(5.0 * p / (3.0 * s.rho));
    const double vn = s.v.dot(n);
    const double expected[6] = {vn - c, vn, vn, vn, vn, vn + c};
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(fan.speeds[k] - expected[k]) / (std::abs(vn) + c));
    v.add("equilibrium speeds", worst <= cfg.check.speed_tol,
          "v_n (x4), v_n +- " + num(c, 8) + ", max rel dev " + num(worst, 3));
    kc = k_condition(u, n, spec, cfg.check.k_tol);
    v.add("K-condition", kc->overall_pass,
          std::string(kc->any_marginal ? "marginal, " : "") + "contact null dimension " +
              std::to_string(kc->contact_null_dimension));
  }
  const ConvexityReport cv = convexity_check(u, spec, cfg.check.gradient_tol);
  v.add("entropy gradient equals main field", cv.gradient_pass,
        "mismatch " + num(cv.gradient_mismatch, 3) + (cv.reduced_confidence ? " (reduced confidence)" : ""));
  v.add("entropy Hessian negative definite", cv.concave,
        "largest eigenvalue " + num(cv.max_hessian_eigenvalue, 3));

  const fs::path path = dir / "eigen.csv";
  {
    std::ofstream f = open_csv(path);
    f << "D,rho,vx,T,p,Pi_over_p";
    for (int k = 1; k <= 6; ++k) f << ",speed_" << k;
    for (int k = 1; k <= 6; ++k) f << ",family_" << k;
    f << ",k_pass,k_weak_pass,k_marginal,contact_null_dimension,gradient_mismatch,"
         "max_hessian_eigenvalue,convex_pass,reduced_confidence\n";
    f << num(spec.D(), prec) << ',' << num(s.rho, prec) << ',' << num(s.v.x(), prec) << ','
      << num(s.T, prec) << ',' << num(p, prec) << ',' << num(Z, prec);
    for (double c : fan.speeds) f << ',' << num(c, prec);
    for (WaveFamily w : fan.families) f << ',' << to_string(w);
    if (kc) {
      f << ',' << kc->overall_pass << ',' << kc->weak_pass << ',' << kc->any_marginal << ','
        << kc->contact_null_dimension;
    } else {
      f << ",,,,";
    }
    f << ',' << num(cv.gradient_mismatch, 4) << ',' << num(cv.max_hessian_eigenvalue, prec) << ','
      << cv.pass << ',' << cv.reduced_confidence << '\n';
  }
  if (kc) {
    const fs::path kpath = dir / "eigen_kcondition.csv";
    std::ofstream f = open_csv(kpath);
    f << "speed,family,delta_Pi,production_response,pass,marginal\n";
    for (const KConditionEntry& e : kc->entries) {
      f << num(e.speed, prec) << ',' << to_string(e.family) << ',' << num(e.delta_Pi, prec) << ','
        << num(e.production_response, prec) << ',' << e.pass << ',' << e.marginal << '\n';
    }
  }
  out << "wrote " << path.string() << '\n';
  return v.finish(err);
}

double relative_drift(double now, double start, double scale) {
  return std::abs(now - start) / std::max(std::abs(start), scale);
}

void write_run_outputs(const TimeSeries& ts, const RunConfig& cfg, const fs::path& dir,
                       const std::string& stem) {
  for (std::size_t k = 0; k < ts.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_snapshot_%04zu.csv", stem.c_str(), k);
    std::ofstream f = open_csv(dir / name);
    write_snapshot_csv(f, ts.snapshots[k], ts.gas, cfg.output.precision);
  }
  std::ofstream f = open_csv(dir / (stem + "_diagnostics.csv"));
  write_diagnostics_csv(f, ts, cfg.output.precision);
}

// Worst relative decrease of the total entropy over one step.
double worst_entropy_step(const TimeSeries& ts) {
  double worst = 0.0;
  for (std::size_t k = 1; k < ts.diagnostics.size(); ++k) {
    const double prev = ts.diagnostics[k - 1].total_entropy;
    worst = std::min(worst, (ts.diagnostics[k].total_entropy - prev) / std::abs(prev));
  }
  return worst;
}

int cmd_run(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const Scenario sc = cfg.resolved_scenario();
  TimeSeries ts;
  try {
    ts = run_scenario(sc);
  } catch (const SolverAbort& e) {
    const fs::path dump = dir / "run_abort_dump.csv";
    std::ofstream(dump) << e.dump();
    v.add("run completed", false, e.what(), dump.string());
    return v.finish(err);
  }
  write_run_outputs(ts, cfg, dir, "run");
  const fs::path diag = dir / "run_diagnostics.csv";
  v.add("run completed", true,
        std::to_string(ts.steps) + " steps to t = " + num(ts.diagnostics.back().t, 8) + ", " +
            std::to_string(ts.total_projections) + " projections");

  const double worst = worst_entropy_step(ts);
  v.add("total entropy non-decreasing", worst >= -cfg.check.entropy_step_tol,
        "worst relative step change " + num(worst, 3), diag.string());

  if (sc.boundary == Boundary::kPeriodic) {
    const DiagnosticRow& a = ts.diagnostics.front();
    const DiagnosticRow& b = ts.diagnostics.back();
    const double L = sc.x_right - sc.x_left;
    // Round-off accumulates with the step count; the tolerance is per 1000 steps.
    const double tol = cfg.check.conservation_tol * std::max(1.0, ts.steps / 1000.0);
    const double momentum_scale = std::sqrt(a.total_F * a.total_Gll);
    const double dF = relative_drift(b.total_F, a.total_F, 0.0);
    const double dM = relative_drift(b.total_Fx, a.total_Fx, momentum_scale);
    const double dG = relative_drift(b.total_Gll, a.total_Gll, 0.0);
    const double dP = std::abs(b.total_Fll - a.total_Fll - b.production_integral) /
                      std::max(std::abs(a.total_Fll), 1e-300);
    v.add("conservation of F, F_x, G_ll", std::max({dF, dM, dG}) <= tol,
          "drifts " + num(dF, 3) + ", " + num(dM, 3) + ", " + num(dG, 3) + " over length " + num(L, 4),
          diag.string());
    if (ts.total_projections == 0) {
      v.add("F_ll production balance", dP <= tol, "residual " + num(dP, 3), diag.string());
    } else {
      v.note("F_ll balance not asserted: admissibility projections modified F_ll");
    }
  }
  out << "wrote " << ts.snapshots.size() << " snapshots and " << diag.string() << '\n';
  return v.finish(err);
}

int cmd_relax(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const double Z0 = cfg.is_set("scenario.Pi_over_p") ? cfg.scenario.Pi_over_p : 0.3;
  const double t_end = cfg.is_set("scenario.t_end") ? cfg.scenario.t_end : 1.0;
  Scenario sc = presets::homogeneous_relaxation(Z0, cfg.gas.tau(), t_end, cfg.gas.D());
  sc.gas = cfg.gas;
  sc.rho = cfg.scenario.rho;
  sc.T = cfg.scenario.T;
  if (cfg.output.cadence > 0.0) sc.output_interval = cfg.output.cadence;
  const TimeSeries ts = run_scenario(sc);

  const fs::path path = dir / "relax.csv";
  std::ofstream f = open_csv(path);
  f << "t,Pi,Pi_exact,abs_err\n";
  double worst = 0.0;
  const int prec = cfg.output.precision;
  for (const Snapshot& snap : ts.snapshots) {
    const State6 s = primitive_from_conserved(snap.grid.cells[0], sc.gas);
    const double p = pressure(s, sc.gas);
    const double exact = Z0 * p * std::exp(-snap.t / sc.gas.tau());
    const double e = std::abs(s.Pi - exact);
    worst = std::max(worst, e / p);
    f << num(snap.t, prec) << ',' << num(s.Pi, prec) << ',' << num(exact, prec) << ',' << num(e, 4) << '\n';
  }
  v.add("exact relaxation", worst <= cfg.check.relax_tol,
        "max |Pi - Pi0 exp(-t/tau)| / p = " + num(worst, 3) + " over " +
            std::to_string(ts.snapshots.size()) + " outputs",
        path.string());
  out << "wrote " << path.string() << '\n';
  return v.finish(err);
}

int cmd_nslimit(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const double tau = cfg.is_set("gas.tau") ? cfg.gas.tau() : 1e-3;
  const int N = cfg.is_set("scenario.N") ? cfg.scenario.N : (cfg.quick ? 200 : 400);
  Scenario sc = presets::ns_limit(tau, cfg.gas.D(), N);
  sc.gas = GasSpec(cfg.gas.D(), cfg.gas.m(), cfg.gas.kB(), tau);
  if (cfg.is_set("scenario.cfl")) sc.cfl = cfg.scenario.cfl;
  if (cfg.is_set("scenario.t_end")) sc.t_end = cfg.scenario.t_end;
  if (cfg.is_set("scenario.amplitude")) sc.amplitude = cfg.scenario.amplitude;
  if (cfg.is_set("scenario.order")) sc.order = cfg.scenario.order;
  const TimeSeries ts = run_scenario(sc);
  const NsLimitReport r = ns_limit_diagnostic(ts, sc.gas);

  const fs::path path = dir / "nslimit.csv";
  {
    std::ofstream f = open_csv(path);
    const Grid1D& g = ts.final_snapshot().grid;
    const int prec = cfg.output.precision;
    f << "x,Pi,Pi_navier_stokes\n";
    const double coeff = 2.0 / 3.0 * (sc.gas.D() - 3.0) / sc.gas.D() * tau;
    for (int i = 0; i < g.N; ++i) {
      const State6 s = primitive_from_conserved(g.cells[i], sc.gas);
      const double vl = primitive_from_conserved(g.cells[(i + g.N - 1) % g.N], sc.gas).v.x();
      const double vr = primitive_from_conserved(g.cells[(i + 1) % g.N], sc.gas).v.x();
      const double ns = -coeff * pressure(s, sc.gas) * (vr - vl) / (2.0 * g.dx());
      f << num(g.x(i), prec) << ',' << num(s.Pi, prec) << ',' << num(ns, prec) << '\n';
    }
  }
  const double bound = cfg.check.ns_factor * tau;
  v.add("Navier-Stokes limit", r.max_deviation <= bound,
        "max deviation " + num(r.max_deviation, 3) + " <= " + num(bound, 3) + ", L2 " +
            num(r.l2_deviation, 3) + ", nu " + num(r.nu, 6),
        path.string());
  if (r.reduced_confidence) v.note("profile is not smooth on the grid; reduced confidence");
  out << "wrote " << path.string() << '\n';
  return v.finish(err);
}

std::vector<double> window_samples(const GasSpec& spec, int n) {
  const double lo = -0.9;
  const double hi = 0.95 * upper_ratio_bound(spec);
  std::vector<double> z(n);
  for (int k = 0; k < n; ++k) z[k] = lo + (hi - lo) * k / (n - 1);
  return z;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  Verdicts v(out);
  const CheckConfig& c = cfg.check;
  const int prec = cfg.output.precision;
  const GasSpec& base = cfg.gas;

  // Oracle, entropy sign and decomposition on the (Z, D) grid.
  const fs::path oracle_path = dir / "sweep_oracle.csv";
  bool oracle_ok = true, sign_ok = true, split_ok = true;
  double worst_oracle = 0.0, worst_split = 0.0;
  {
    std::ofstream f = open_csv(oracle_path);
    f << "D,Z,quantity,closed_form,quadrature,rel_err,rule\n";
    for (double D : c.d_values) {
      const GasSpec spec = base.with_D(D);
      for (double Z : window_samples(spec, c.z_points)) {
        const State6 s = state_from_ratio(1.0, Vec3(0.3, -0.2, 0.1), 1.0, Z, spec);
        const std::string prefix = num(D, prec) + ',' + num(Z, prec) + ',';
        const OracleReport m = oracle_constraint_check(s, spec, c.quad, c.moment_tol);
        const OracleReport fl = oracle_flux_check(s, spec, c.quad, c.oracle_tol);
        const OracleEntry h = oracle_entropy_entry(s, spec, c.quad);
        write_oracle_rows(f, m.entries, prefix, prec);
        write_oracle_rows(f, fl.entries, prefix, prec);
        write_oracle_rows(f, {h}, prefix, prec);
        oracle_ok = oracle_ok && m.passed() && fl.passed() && h.rel_err <= c.oracle_tol;
        worst_oracle = std::max({worst_oracle, m.max_rel_err(), fl.max_rel_err(), h.rel_err});
        const double k = nonequilibrium_entropy(Z, spec);
        if (Z != 0.0 && !(k < 0.0)) sign_ok = false;
        const EntropyParts e = entropy_parts(s, spec);
        const double split = std::abs(e.h - (e.h_eq + s.rho * k)) / std::abs(e.h);
        worst_split = std::max(worst_split, split);
        split_ok = split_ok && split <= 1e-10;
      }
    }
  }
  v.add("closure versus quadrature on the (Z, D) grid", oracle_ok,
        "max rel err " + num(worst_oracle, 3), oracle_path.string());
  v.add("k(Z) < 0 off equilibrium", sign_ok && nonequilibrium_entropy(0.0, base) == 0.0, "");
  v.add("h = h_E + rho k", split_ok, "max rel dev " + num(worst_split, 3));

  // Equilibrium reduction on a (C, I) sample.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_reduction = 0.0;
  for (double D : c.d_values) {
    const GasSpec spec = base.with_D(D);
    const State6 s = state_from_ratio(1.3, Vec3(0.2, 0, 0), 0.8, 0.0, spec);
    for (int k = 0; k < 1000; ++k) {
      const Vec3 C(6 * unit(rng) - 3, 6 * unit(rng) - 3, 6 * unit(rng) - 3);
      const double I = 8.0 * unit(rng);
      const double f6 = distribution_value(C, I, s, spec);
      const double fm = maxwellian_value(C, I, s, spec);
      worst_reduction = std::max(worst_reduction, std::abs(f6 - fm) / std::abs(fm));
    }
  }
  v.add("closure reduces to the Maxwellian at Pi = 0", worst_reduction <= c.reduction_tol,
        "max rel dev " + num(worst_reduction, 3));

  // Hyperbolicity over 99% of the window and the subcharacteristic ordering.
  const fs::path hyp_path = dir / "sweep_hyperbolicity.csv";
  bool hyperbolic = true;
  int losses = 0;
  {
    std::ofstream f = open_csv(hyp_path);
    f << "D,Z,max_imaginary,real\n";
    const double D_lo = *std::min_element(c.d_values.begin(), c.d_values.end());
    const double D_hi = *std::max_element(c.d_values.begin(), c.d_values.end());
    const int n = c.grid_points;
    for (int a = 0; a < n; ++a) {
      const double D = D_lo + (D_hi - D_lo) * a / (n - 1);
      const GasSpec spec = base.with_D(D);
      const double ub = upper_ratio_bound(spec);
      // 99% of the window, centred.
      const double lo = -1.0 + 0.005 * (ub + 1.0);
      const double hi = ub - 0.005 * (ub + 1.0);
      for (int b = 0; b < n; ++b) {
        const double Z = lo + (hi - lo) * b / (n - 1);
        const Conserved6 u =
            conserved_from_primitive(state_from_ratio(1.0, Vec3(0.4, 0, 0), 1.0, Z, spec), spec);
        double imag = 0.0;
        bool real = true;
        try {
          imag = wave_fan(u, Vec3::UnitX(), spec, c.speed_tol).max_imaginary;
        } catch (const HyperbolicityLoss& e) {
          imag = e.margin();
          real = false;
          ++losses;
        }
        hyperbolic = hyperbolic && real;
        f << num(D, prec) << ',' << num(Z, prec) << ',' << num(imag, 4) << ',' << real << '\n';
      }
    }
  }
  v.add("real speeds across 99% of the window", hyperbolic,
        std::to_string(losses) + " complex cases on " + std::to_string(c.grid_points) + "^2 grid",
        hyp_path.string());
  bool ordered = true;
  for (double D : c.d_values) {
    const State6 s = state_from_ratio(1.0, Vec3::Zero(), 1.0, 0.0, base.with_D(D));
    ordered = ordered && euler_sound_speed(s, base.with_D(D)) <= frozen_sound_speed(s, base.with_D(D));
  }
  v.add("Euler sound speed below the six-field speed", ordered, "");

  // Entropy gradient and concavity on random admissible states.
  const fs::path conv_path = dir / "sweep_convexity.csv";
  bool convex_ok = true;
  double worst_grad = 0.0;
  {
    std::ofstream f = open_csv(conv_path);
    f << "D,rho,vx,vy,vz,T,Z,gradient_mismatch,max_hessian_eigenvalue,pass,reduced_confidence\n";
    const double D_lo = *std::min_element(c.d_values.begin(), c.d_values.end());
    const double D_hi = *std::max_element(c.d_values.begin(), c.d_values.end());
    for (int k = 0; k < c.random_states; ++k) {
      const double D = D_lo + (D_hi - D_lo) * unit(rng);
      const GasSpec spec = base.with_D(D);
      const double ub = upper_ratio_bound(spec);
      const double Z = -0.8 + (0.9 * ub + 0.8) * unit(rng);
      const Vec3 vel(2 * unit(rng) - 1, 2 * unit(rng) - 1, 2 * unit(rng) - 1);
      const double rho = 0.5 + 1.5 * unit(rng);
      const double T = 0.5 + 1.5 * unit(rng);
      const State6 s = state_from_ratio(rho, vel, T, Z, spec);
      const ConvexityReport r = convexity_check(conserved_from_primitive(s, spec), spec, c.gradient_tol);
      convex_ok = convex_ok && r.pass;
      worst_grad = std::max(worst_grad, r.gradient_mismatch);
      f << num(D, prec) << ',' << num(rho, prec) << ',' << num(vel.x(), prec) << ','
        << num(vel.y(), prec) << ',' << num(vel.z(), prec) << ',' << num(T, prec) << ','
        << num(Z, prec) << ',' << num(r.gradient_mismatch, 4) << ','
        << num(r.max_hessian_eigenvalue, prec) << ',' << r.pass << ',' << r.reduced_confidence << '\n';
    }
  }
  v.add("main field gradient and concave entropy", convex_ok,
        std::to_string(c.random_states) + " random states, worst gradient mismatch " + num(worst_grad, 3),
        conv_path.string());
  out << "wrote " << oracle_path.string() << ", " << hyp_path.string() << ", " << conv_path.string() << '\n';
  return v.finish(err);
}

fs::path output_dir(const RunConfig& cfg, const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (cfg.is_set("output.dir")) return cfg.output.dir;
  if (const char* env = std::getenv("ET6_OUTPUT_DIR"); env && *env) return env;
  return cfg.output.dir;
}

}  // namespace

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Six-field extended thermodynamics: closure checks, eigenstructure, and 1D runs"};
  app.require_subcommand(1, 1);
  std::optional<std::string> config_path;
  std::optional<std::string> out_flag;
  bool quick = false;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--output-dir", out_flag, "directory for CSV output");
  app.add_flag("--quick", quick, "scale sweeps and orders down for CI");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, const fs::path&, std::ostream&, std::ostream&);
  };
  const Sub subs[] = {
      {"check", "kinetic oracle suite at the configured state", cmd_check},
      {"eigen", "characteristic speeds, K-condition and convexity", cmd_eigen},
      {"run", "run the configured scenario", cmd_run},
      {"relax", "homogeneous relaxation against the exact solution", cmd_relax},
      {"nslimit", "Maxwellian-iteration comparison on a smooth wave", cmd_nslimit},
      {"sweep", "(Z, D) grid property suites", cmd_sweep},
  };
  Overrides overrides;
  std::vector<std::pair<CLI::App*, const Sub*>> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    add_overrides(sub, overrides);
    apps.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  RunConfig cfg;
  fs::path dir;
  try {
    if (config_path) cfg = load_config(*config_path);
    apply_overrides(cfg, overrides);
    if (quick) cfg.apply_quick();
    cfg.validate();
    dir = output_dir(cfg, out_flag);
    fs::create_directories(dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& [sub, s] : apps) {
    if (!sub->parsed()) continue;
    try {
      return s->fn(cfg, dir, out, err);
    } catch (const SolverAbort& e) {
      const fs::path dump = dir / (std::string(s->name) + "_abort_dump.csv");
      std::ofstream(dump) << e.dump();
      err << "aborted: " << e.what() << "\nstate written to " << dump.string() << '\n';
      return kExitFail;
    } catch (const std::exception& e) {
      err << s->name << " failed: " << e.what() << '\n';
      return kExitFail;
    }
  }
  return kExitUsage;
}

}  // namespace et6::cli
