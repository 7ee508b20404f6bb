// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures (capped at 1).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "et6/eigenstructure.hpp"
#include "et6/oracle.hpp"
#include "et6/presets.hpp"
#include "et6/solver.hpp"

using namespace et6;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

struct Outcome {
  bool pass;
  std::string detail;
};

const std::vector<double> kDValues{3.5, 4.0, 5.0, 6.0, 7.0, 9.0, 12.0};
const std::vector<double> kKDValues{4.0, 5.0, 7.0, 12.0};

std::vector<double> window(const GasSpec& g, int n, double fraction) {
  const double lo = -fraction;
  const double hi = fraction * upper_ratio_bound(g);
  std::vector<double> z(n);
  for (int k = 0; k < n; ++k) z[k] = lo + (hi - lo) * k / (n - 1);
  return z;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome closure_oracle() {
  const auto t0 = Clock::now();
  double worst_flux = 0.0, worst_moment = 0.0;
  bool ok = true;
  for (double D : kDValues) {
    const GasSpec g(D);
    for (double Z : window(g, 7, 0.95)) {
      const State6 s = state_from_ratio(1.0, Vec3(0.3, -0.2, 0.1), 1.0, Z, g);
      const OracleReport f = oracle_flux_check(s, g, {}, 1e-8);
      const OracleReport m = oracle_constraint_check(s, g, {}, 1e-8);
      ok = ok && f.passed() && m.passed();
      worst_flux = std::max(worst_flux, f.max_rel_err());
      worst_moment = std::max(worst_moment, m.max_rel_err());
    }
  }
  const double t = seconds_since(t0);
  return {ok && t <= 60.0, "7x7 grid, max rel err flux " + fmt("%.2e", worst_flux) + " moments " +
                               fmt("%.2e", worst_moment) + ", " + fmt("%.1f", t) + " s"};
}

Outcome equilibrium_reduction() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int samples = 0;
  for (double D : {kMinDegreesOfFreedom, 4.0, 5.0, 7.0, 12.0}) {
    const GasSpec g(D, 1.7, 0.6);
    const State6 s{1.3, Vec3(0.2, -0.4, 0.1), 0.8, 0.0};
    for (int k = 0; k < 1000; ++k, ++samples) {
      const Vec3 C(6 * u(rng) - 3, 6 * u(rng) - 3, 6 * u(rng) - 3);
      const double I = 8.0 * u(rng);
      worst = std::max(worst, rel(distribution_value(C, I, s, g), maxwellian_value(C, I, s, g)));
    }
  }
  return {worst <= 1e-12, std::to_string(samples) + " (C, I) points, max rel dev " + fmt("%.2e", worst)};
}

Outcome entropy_structure() {
  bool sign = true;
  double worst_quad = 0.0, worst_split = 0.0;
  for (double D : kDValues) {
    const GasSpec g(D);
    sign = sign && nonequilibrium_entropy(0.0, g) == 0.0;
    for (double Z : window(g, 201, 0.999)) {
      if (Z != 0.0) sign = sign && nonequilibrium_entropy(Z, g) < 0.0;
    }
    for (double Z : window(g, 7, 0.95)) {
      const State6 s = state_from_ratio(1.2, Vec3(0.3, 0, 0), 0.9, Z, g);
      const EntropyParts e = entropy_parts(s, g);
      worst_quad = std::max(worst_quad, rel(oracle_entropy(s, g), e.h));
      worst_split = std::max(worst_split, std::abs(e.h - (e.h_eq + s.rho * e.k)) / std::abs(e.h));
    }
  }
  return {sign && worst_quad <= 1e-8 && worst_split <= 1e-10,
          std::string("k sign ") + (sign ? "ok" : "violated") + ", quadrature " +
              fmt("%.2e", worst_quad) + ", h - h_E - rho k " + fmt("%.2e", worst_split)};
}

Outcome gradient_identity() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, top_eig = -1e300;
  int concave = 0, n = 50;
  for (int k = 0; k < n; ++k) {
    const GasSpec g(3.5 + 8.5 * u(rng));
    const double ub = upper_ratio_bound(g);
    const double Z = -0.8 + (0.9 * ub + 0.8) * u(rng);
    const Vec3 v(2 * u(rng) - 1, 2 * u(rng) - 1, 2 * u(rng) - 1);
    const State6 s = state_from_ratio(0.5 + 1.5 * u(rng), v, 0.5 + 1.5 * u(rng), Z, g);
    const ConvexityReport r = convexity_check(conserved_from_primitive(s, g), g, 1e-6);
    worst = std::max(worst, r.gradient_mismatch);
    top_eig = std::max(top_eig, r.max_hessian_eigenvalue);
    concave += r.concave ? 1 : 0;
  }
  return {worst <= 1e-6 && concave == n,
          std::to_string(n) + " states, worst gradient mismatch " + fmt("%.2e", worst) + ", " +
              std::to_string(concave) + " concave, largest scaled Hessian eigenvalue " + fmt("%.2e", top_eig)};
}

Outcome equilibrium_speeds() {
  double worst = 0.0;
  std::vector<double> sound;
  for (double D : kKDValues) {
    const GasSpec g(D, 1.0, 1.0);
    for (const State6& s : {State6{1.0, Vec3::Zero(), 1.0, 0.0}, State6{0.7, Vec3(0.4, -0.3, 0.2), 1.6, 0.0}}) {
      const Vec3 n = Vec3(1.0, 0.5, -0.2).normalized();
      const WaveFan fan = wave_fan(conserved_from_primitive(s, g), n, g);
      const double vn = s.v.dot(n);
      const double c = std::sqrt(5.0 * pressure(s, g) / (3.0 * s.rho));
      const double expect[6] = {vn - c, vn, vn, vn, vn, vn + c};
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(fan.speeds[k] - expect[k]));
    }
    const WaveFan unit = wave_fan(conserved_from_primitive(State6{}, g), Vec3::UnitX(), g);
    sound.push_back(unit.speeds[5]);
  }
  double spread = 0.0;
  for (double c : sound) spread = std::max(spread, std::abs(c - sound.front()));
  const bool value = std::abs(sound.front() - 1.2909944) < 5e-8;
  return {worst <= 1e-10 && spread <= 1e-10 && value,
          "max speed error " + fmt("%.2e", worst) + ", spread over D " + fmt("%.2e", spread) +
              ", c = " + fmt("%.9f", sound.front())};
}

Outcome k_condition_check() {
  bool all = true;
  double worst_formula = 0.0;
  for (double D : kKDValues) {
    const GasSpec g(D);
    const Conserved6 u = conserved_from_primitive(State6{}, g);
    const KConditionReport r = k_condition(u, Vec3::UnitX(), g);
    all = all && r.overall_pass;
    const double eps = 0.5 * D;
    const double expected = 4.0 / (3.0 * D * D) * (D - 3.0) * eps;
    // Route 1: characteristic amplitudes. Route 2: grad Pi on the fan eigenvectors.
    for (const AccelerationJump& j : acceleration_wave(u, Vec3::UnitX(), 1.0, g)) {
      worst_formula = std::max(worst_formula, rel(j.delta_Pi, expected));
    }
    const WaveFan fan = wave_fan(u, Vec3::UnitX(), g);
    const Vec6 grad = dynamic_pressure_gradient(u, g);
    for (int col : {0, 5}) {
      const Vec6 r6 = fan.eigenvectors.col(col) / fan.eigenvectors(0, col);
      worst_formula = std::max(worst_formula, rel(grad.dot(r6), expected));
    }
  }
  return {all && worst_formula <= 1e-8,
          std::string("D in {4,5,7,12} ") + (all ? "all six pass" : "failure") +
              ", delta Pi formula max rel err " + fmt("%.2e", worst_formula) + " (0.266667 at D=5)"};
}

Outcome relaxation() {
  double worst = 0.0;
  int points = 0;
  for (double tau : {1.0, 0.1, 1e-3}) {
    const Scenario sc = presets::homogeneous_relaxation(0.3, tau, 1.0);
    const TimeSeries ts = run_scenario(sc);
    for (const Snapshot& snap : ts.snapshots) {
      for (const Conserved6& u : snap.grid.cells) {
        const State6 s = primitive_from_conserved(u, sc.gas);
        const double p = pressure(s, sc.gas);
        const double exact = 0.3 * p * std::exp(-snap.t / tau);
        worst = std::max(worst, std::abs(s.Pi - exact) / p);
        ++points;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(points) + " cell-times, max |Pi - exact| / p " + fmt("%.2e", worst)};
}

Outcome ns_limit() {
  const auto t0 = Clock::now();
  const double tau = 1e-3;
  const Scenario sc = presets::ns_limit(tau, 5.0, 400);
  const TimeSeries ts = run_scenario(sc);
  const NsLimitReport r = ns_limit_diagnostic(ts, sc.gas);
  const double t = seconds_since(t0);
  return {r.max_deviation <= 10.0 * tau && t <= 120.0 && !r.reduced_confidence,
          "N=400, max deviation " + fmt("%.2e", r.max_deviation) + " (bound " + fmt("%.0e", 10 * tau) +
              "), L2 " + fmt("%.2e", r.l2_deviation) + ", nu " + fmt("%.4e", r.nu) + ", " + fmt("%.1f", t) + " s"};
}

Outcome monatomic() {
  const Scenario sc = presets::monatomic(200);
  const TimeSeries six = run_scenario(sc);
  const TimeSeries euler = euler_reference(sc);
  const double l1 = density_l1(six.final_snapshot().grid, euler.final_snapshot().grid);
  const double all = primitive_l1(six.final_snapshot().grid, euler.final_snapshot().grid, sc.gas);
  return {l1 <= 1e-6, "D = 3 + 1e-6, L1(rho) " + fmt("%.2e", l1) + ", L1(rho, v, p) " + fmt("%.2e", all) +
                          ", projections " + std::to_string(six.total_projections)};
}

Outcome conservation() {
  const Scenario sc = presets::periodic_conservation(1000, 100);
  const TimeSeries ts = run_scenario(sc);
  const auto& first = ts.diagnostics.front();
  const auto& last = ts.diagnostics.back();
  const double scale = std::sqrt(first.total_F * first.total_Gll);
  auto drift = [&](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), scale); };
  const double dF = drift(first.total_F, last.total_F);
  const double dFx = drift(first.total_Fx, last.total_Fx);
  const double dG = drift(first.total_Gll, last.total_Gll);
  // Transverse momentum: sum over the grid.
  auto transverse = [](const Grid1D& g) {
    double y = 0.0, z = 0.0;
    for (const Conserved6& u : g.cells) {
      y += u.F_i.y() * g.dx();
      z += u.F_i.z() * g.dx();
    }
    return Vec3(0.0, y, z);
  };
  const double dT = (transverse(ts.final_snapshot().grid) - transverse(ts.snapshots.front().grid)).norm() / scale;
  double worst_step = 0.0;
  for (size_t k = 1; k < ts.diagnostics.size(); ++k) {
    const double prev = ts.diagnostics[k - 1].total_entropy;
    worst_step = std::min(worst_step, (ts.diagnostics[k].total_entropy - prev) / std::abs(prev));
  }
  const double worst = std::max({dF, dFx, dG, dT});
  return {ts.steps == 1000 && worst <= 1e-13 && worst_step >= -1e-10,
          std::to_string(ts.steps) + " steps, drift F " + fmt("%.1e", dF) + " F_x " + fmt("%.1e", dFx) +
              " G_ll " + fmt("%.1e", dG) + " F_yz " + fmt("%.1e", dT) + ", worst entropy step " +
              fmt("%.1e", worst_step)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closure vs quadrature", closure_oracle},
      {"equilibrium reduction", equilibrium_reduction},
      {"entropy structure", entropy_structure},
      {"main-field gradient and concavity", gradient_identity},
      {"equilibrium eigenstructure", equilibrium_speeds},
      {"K-condition", k_condition_check},
      {"homogeneous relaxation", relaxation},
      {"Navier-Stokes limit", ns_limit},
      {"monatomic limit", monatomic},
      {"conservation and entropy", conservation},
  };
  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
