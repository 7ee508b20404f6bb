#include "et6/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "et6/eigenstructure.hpp"
#include "et6/quadrature.hpp"

namespace et6 {
namespace {

constexpr int kGhost = 2;
constexpr double kProjectionFraction = 0.999;
constexpr double kSpeedSafety = 1.1;

class CflViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reconstruction variables: rho, vx, vy, vz, p, Z.
using Prim = Vec6;

Prim to_prim(const Conserved6& u, const GasSpec& spec) {
  const State6 s = primitive_from_conserved(u, spec);
  const double p = pressure(s, spec);
  Prim q;
  q << s.rho, s.v.x(), s.v.y(), s.v.z(), p, s.Pi / p;
  return q;
}

Conserved6 from_prim(const Prim& q, const GasSpec& spec) {
  State6 s;
  s.rho = q[0];
  s.v = Vec3(q[1], q[2], q[3]);
  s.T = q[4] / (spec.R() * q[0]);
  s.Pi = q[5] * q[4];
  return conserved_from_primitive(s, spec);
}

double signal_speed(const Prim& q, const GasSpec& spec, Model model) {
  const double p = q[4];
  const double c = model == Model::kET6
                       ? std::sqrt(5.0 * p * (1.0 + q[5]) / (3.0 * q[0]))
                       : std::sqrt((spec.D() + 2.0) / spec.D() * p / q[0]);
  return std::abs(q[1]) + c;
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

std::vector<Prim> padded_prims(const Grid1D& g, const GasSpec& spec) {
  std::vector<Prim> q(g.N + 2 * kGhost);
  for (int i = 0; i < g.N; ++i) q[i + kGhost] = to_prim(g.cells[i], spec);
  for (int k = 0; k < kGhost; ++k) {
    Prim& left = q[kGhost - 1 - k];
    Prim& right = q[g.N + kGhost + k];
    switch (g.boundary) {
      case Boundary::kPeriodic:
        left = q[g.N + kGhost - 1 - k];
        right = q[kGhost + k];
        break;
      case Boundary::kOutflow:
        left = q[kGhost];
        right = q[g.N + kGhost - 1];
        break;
      case Boundary::kReflective:
        left = q[kGhost + k];
        right = q[g.N + kGhost - 1 - k];
        left[1] = -left[1];
        right[1] = -right[1];
        break;
    }
  }
  return q;
}

std::string dump_grid(const Grid1D& g) {
  std::ostringstream os;
  os.precision(17);
  os << "i,F,Fx,Fy,Fz,Gll,Fll\n";
  for (int i = 0; i < g.N; ++i) {
    const Conserved6& u = g.cells[i];
    os << i << ',' << u.F << ',' << u.F_i.x() << ',' << u.F_i.y() << ','
       << u.F_i.z() << ',' << u.G_ll << ',' << u.F_ll << '\n';
  }
  return os.str();
}

// -d/dx of the numerical flux; also returns the largest face signal speed.
std::vector<Vec6> residual(const Grid1D& g, const GasSpec& spec, int order,
                           Model model, double* max_speed, long* clips) {
  const std::vector<Prim> q = padded_prims(g, spec);
  const int M = static_cast<int>(q.size());
  std::vector<Prim> qL(M), qR(M);  // values at the left / right face of each cell
  for (int i = 1; i < M - 1; ++i) {
    Prim slope = Prim::Zero();
    if (order >= 2) {
      for (int c = 0; c < 6; ++c) {
        const double a = q[i][c] - q[i - 1][c];
        const double b = q[i + 1][c] - q[i][c];
        slope[c] = minmod(a, b);
        if (a * b < 0.0 && clips) ++*clips;
      }
    }
    qL[i] = q[i] - 0.5 * slope;
    qR[i] = q[i] + 0.5 * slope;
  }

  const Vec3 ex = Vec3::UnitX();
  const double dx = g.dx();
  std::vector<Vec6> face(g.N + 1);
  double smax = 0.0;
  for (int f = 0; f <= g.N; ++f) {
    const int left = f + kGhost - 1;
    const int right = f + kGhost;
    const Prim& a = qR[left];
    const Prim& b = qL[right];
    const Conserved6 ua = from_prim(a, spec);
    const Conserved6 ub = from_prim(b, spec);
    const double s = std::max(signal_speed(a, spec, model), signal_speed(b, spec, model));
    smax = std::max(smax, s);
    face[f] = 0.5 * (flux_along(ua, ex, spec) + flux_along(ub, ex, spec)) -
              0.5 * s * (ub.to_vector() - ua.to_vector());
  }
  if (max_speed) *max_speed = smax;
  std::vector<Vec6> r(g.N);
  for (int i = 0; i < g.N; ++i) r[i] = -(face[i + 1] - face[i]) / dx;
  return r;
}

Grid1D euler_stage(const Grid1D& g, double dt, const GasSpec& spec, int order,
                   Model model, StepStats& stats, double max_fraction) {
  double smax = 0.0;
  const std::vector<Vec6> r = residual(g, spec, order, model, &smax, &stats.limiter_clips);
  if (smax * dt > g.dx()) {
    std::ostringstream os;
    os << "CFL number " << smax * dt / g.dx() << " exceeds 1";
    throw CflViolation(os.str());
  }
  Grid1D out = g;
  for (int i = 0; i < g.N; ++i) {
    out.cells[i] = Conserved6::from_vector(g.cells[i].to_vector() + dt * r[i]);
  }
  stats.projections += project_grid(out, spec, model, max_fraction);
  return out;
}

double total(const Grid1D& g, auto&& component) {
  std::vector<double> terms(g.N);
  for (int i = 0; i < g.N; ++i) terms[i] = component(g.cells[i]) * g.dx();
  return pairwise_sum(terms);
}

DiagnosticRow diagnose(const Grid1D& g, double t, const GasSpec& spec) {
  DiagnosticRow row{};
  row.t = t;
  row.total_F = total(g, [](const Conserved6& u) { return u.F; });
  row.total_Fx = total(g, [](const Conserved6& u) { return u.F_i.x(); });
  row.total_Gll = total(g, [](const Conserved6& u) { return u.G_ll; });
  row.total_Fll = total(g, [](const Conserved6& u) { return u.F_ll; });
  row.total_entropy = total(g, [&](const Conserved6& u) { return entropy_density(u, spec); });
  row.max_abs_Z = 0.0;
  for (const Conserved6& u : g.cells) {
    row.max_abs_Z = std::max(row.max_abs_Z, std::abs(pressure_ratio(primitive_from_conserved(u, spec), spec)));
  }
  return row;
}

std::string format_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

}  // namespace

bool project_cell(Conserved6& u, const GasSpec& spec, Model model) {
  const double rho = u.F;
  if (!(rho > 0.0)) throw ReconstructionError("non-positive density after update");
  const double kinetic = u.F_i.squaredNorm() / rho;
  const double rho_eps = 0.5 * (u.G_ll - kinetic);
  if (!(rho_eps > 0.0)) throw ReconstructionError("non-positive internal energy after update");
  const double p = 2.0 * rho_eps / spec.D();
  if (model == Model::kEuler) {
    u.F_ll = kinetic + 3.0 * p;
    return false;
  }
  const double Z = ((u.F_ll - kinetic) / 3.0 - p) / p;
  const double upper = upper_ratio_bound(spec);
  double Z_new = Z;
  if (!(Z > -1.0)) Z_new = -kProjectionFraction;
  else if (!(Z < upper)) Z_new = kProjectionFraction * upper;
  if (Z_new == Z) return false;
  u.F_ll = kinetic + 3.0 * p * (1.0 + Z_new);
  return true;
}

int project_grid(Grid1D& g, const GasSpec& spec, Model model,
                 double max_fraction) {
  int count = 0;
  for (Conserved6& u : g.cells) count += project_cell(u, spec, model) ? 1 : 0;
  if (count > max_fraction * g.N) {
    std::ostringstream os;
    os << count << " of " << g.N << " cells left the admissibility window in one stage";
    throw SolverAbort(os.str(), dump_grid(g));
  }
  return count;
}


const char* to_string(Boundary b) {
  switch (b) {
    case Boundary::kPeriodic: return "periodic";
    case Boundary::kOutflow: return "outflow";
    case Boundary::kReflective: return "reflective";
  }
  return "periodic";
}

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::kRiemann: return "riemann";
    case ScenarioKind::kSmoothWave: return "smooth_wave";
    case ScenarioKind::kUniformRelaxation: return "uniform_relaxation";
  }
  return "smooth_wave";
}

Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::kPeriodic;
  if (text == "outflow") return Boundary::kOutflow;
  if (text == "reflective") return Boundary::kReflective;
  throw std::invalid_argument("boundary must be periodic, outflow or reflective, got '" + text + "'");
}

ScenarioKind parse_scenario_kind(const std::string& text) {
  if (text == "riemann") return ScenarioKind::kRiemann;
  if (text == "smooth_wave") return ScenarioKind::kSmoothWave;
  if (text == "uniform_relaxation") return ScenarioKind::kUniformRelaxation;
  throw std::invalid_argument("kind must be riemann, smooth_wave or uniform_relaxation, got '" + text + "'");
}

void Scenario::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument("scenario." + key + ": " + why);
  };
  if (N < 4) fail("N", "need at least 4 cells");
  if (!(x_right > x_left)) fail("x_right", "must exceed x_left");
  if (!(cfl > 0.0 && cfl < 1.0)) fail("cfl", "must lie in (0, 1)");
  if (!(t_end > 0.0)) fail("t_end", "must be positive");
  if (order != 1 && order != 2) fail("order", "must be 1 or 2");
  if (fixed_dt < 0.0) fail("fixed_dt", "must be >= 0");
  if (output_interval < 0.0) fail("output_interval", "must be >= 0");
  if (!(max_projection_fraction >= 0.0 && max_projection_fraction <= 1.0)) {
    fail("max_projection_fraction", "must lie in [0, 1]");
  }
  if (max_steps < 0) fail("max_steps", "must be >= 0");
  if (kind == ScenarioKind::kSmoothWave) {
    if (profile != "sine" && profile != "gaussian") fail("profile", "must be sine or gaussian");
    if (!(width > 0.0)) fail("width", "must be positive");
    if (!(std::abs(amplitude) < 0.5)) fail("amplitude", "must satisfy |amplitude| < 0.5");
  }
  if (kind == ScenarioKind::kRiemann && !(x0 > x_left && x0 < x_right)) {
    fail("x0", "must lie inside the domain");
  }
  auto check_state = [&](double r, double T, double Z, const std::string& suffix) {
    if (!(r > 0.0)) fail("rho" + suffix, "must be positive");
    if (!(T > 0.0)) fail("T" + suffix, "must be positive");
    if (!(Z > -1.0 && Z < upper_ratio_bound(gas))) {
      fail("Pi_over_p" + suffix, "outside the admissible window (-1, (D-3)/3)");
    }
  };
  if (kind == ScenarioKind::kRiemann) {
    check_state(rho_L, T_L, Pi_over_p_L, "_L");
    check_state(rho_R, T_R, Pi_over_p_R, "_R");
  } else {
    check_state(rho, T, Pi_over_p, "");
  }
}

Grid1D initial_grid(const Scenario& sc) {
  sc.validate();
  const GasSpec& spec = sc.gas;
  Grid1D g;
  g.N = sc.N;
  g.x_left = sc.x_left;
  g.x_right = sc.x_right;
  g.boundary = sc.boundary;
  g.cells.resize(sc.N);
  const double Z0 = sc.model == Model::kEuler ? 0.0 : sc.Pi_over_p;
  for (int i = 0; i < sc.N; ++i) {
    const double x = g.x(i);
    State6 s;
    switch (sc.kind) {
      case ScenarioKind::kUniformRelaxation:
        s = state_from_ratio(sc.rho, Vec3(sc.vx, 0, 0), sc.T, Z0, spec);
        break;
      case ScenarioKind::kRiemann: {
        const bool left = x < sc.x0;
        const double Z = sc.model == Model::kEuler ? 0.0 : (left ? sc.Pi_over_p_L : sc.Pi_over_p_R);
        s = left ? state_from_ratio(sc.rho_L, Vec3(sc.vx_L, 0, 0), sc.T_L, Z, spec)
                 : state_from_ratio(sc.rho_R, Vec3(sc.vx_R, 0, 0), sc.T_R, Z, spec);
        break;
      }
      case ScenarioKind::kSmoothWave: {
        const double L = sc.x_right - sc.x_left;
        const double shape =
            sc.profile == "sine"
                ? std::sin(2.0 * std::numbers::pi * (x - sc.x_left) / L)
                : std::exp(-std::pow((x - 0.5 * (sc.x_left + sc.x_right)) / sc.width, 2));
        const double p0 = spec.R() * sc.rho * sc.T;
        const double gamma = (spec.D() + 2.0) / spec.D();
        const double c = std::sqrt(gamma * p0 / sc.rho);
        const double a = sc.amplitude * shape;
        const double r = sc.rho * (1.0 + a);
        const double p = p0 * (1.0 + gamma * a);
        s = state_from_ratio(r, Vec3(sc.vx + c * a, 0, 0), p / (spec.R() * r), Z0, spec);
        break;
      }
    }
    g.cells[i] = conserved_from_primitive(s, spec);
  }
  return g;
}

double max_wave_speed(const Grid1D& g, const GasSpec& spec, Model model) {
  double s = 0.0;
  for (const Conserved6& u : g.cells) s = std::max(s, signal_speed(to_prim(u, spec), spec, model));
  return kSpeedSafety * s;
}

Grid1D hyperbolic_step(const Grid1D& g, double dt, const GasSpec& spec,
                       int order, Model model, StepStats* stats,
                       double max_projection_fraction) {
  StepStats local;
  StepStats& st = stats ? *stats : local;
  if (order == 1) return euler_stage(g, dt, spec, 1, model, st, max_projection_fraction);
  const Grid1D u1 = euler_stage(g, dt, spec, order, model, st, max_projection_fraction);
  const Grid1D u2 = euler_stage(u1, dt, spec, order, model, st, max_projection_fraction);
  Grid1D out = g;
  for (int i = 0; i < g.N; ++i) {
    out.cells[i] = Conserved6::from_vector(0.5 * (g.cells[i].to_vector() + u2.cells[i].to_vector()));
  }
  st.projections += project_grid(out, spec, model, max_projection_fraction);
  return out;
}

Grid1D relaxation_step_exact(const Grid1D& g, double dt, const GasSpec& spec,
                             double* production) {
  Grid1D out = g;
  const double decay = std::exp(-dt / spec.tau());
  std::vector<double> changes(g.N);
  for (int i = 0; i < g.N; ++i) {
    Conserved6& u = out.cells[i];
    const State6 s = primitive_from_conserved(u, spec);
    const double kinetic = u.F_i.squaredNorm() / u.F;
    const double p = pressure(s, spec);
    const double F_ll = kinetic + 3.0 * (p + s.Pi * decay);
    changes[i] = (F_ll - u.F_ll) * g.dx();
    u.F_ll = F_ll;
  }
  if (production) *production = pairwise_sum(changes);
  return out;
}

TimeSeries run_scenario(const Scenario& sc) {
  const GasSpec& spec = sc.gas;
  Grid1D grid = initial_grid(sc);

  TimeSeries ts;
  ts.gas = spec;
  ts.model = sc.model;
  double t = 0.0;
  double production = 0.0;
  DiagnosticRow row0 = diagnose(grid, t, spec);
  row0.dt = 0.0;
  ts.diagnostics.push_back(row0);
  ts.snapshots.push_back({t, grid});

  const double t_tol = 1e-12 * sc.t_end;
  double next_output = sc.output_interval > 0.0 ? sc.output_interval : sc.t_end;
  while (sc.t_end - t > t_tol) {
    if (sc.max_steps > 0 && ts.steps >= sc.max_steps) break;
    double dt = sc.fixed_dt > 0.0 ? sc.fixed_dt
                                  : sc.cfl * grid.dx() / max_wave_speed(grid, spec, sc.model);
    const double target = std::min(next_output, sc.t_end);
    bool hits_output = false;
    if (t + dt >= target - t_tol) {
      dt = target - t;
      hits_output = true;
    }

    Grid1D next;
    StepStats stats;
    double step_production = 0.0;
    for (int attempt = 0;; ++attempt) {
      try {
        stats = StepStats{};
        step_production = 0.0;
        double part = 0.0;
        next = grid;
        if (sc.model == Model::kET6) {
          next = relaxation_step_exact(next, 0.5 * dt, spec, &part);
          step_production += part;
        }
        next = hyperbolic_step(next, dt, spec, sc.order, sc.model, &stats,
                               sc.max_projection_fraction);
        if (sc.model == Model::kET6) {
          next = relaxation_step_exact(next, 0.5 * dt, spec, &part);
          step_production += part;
        }
        break;
      } catch (const CflViolation& e) {
        if (attempt >= 20) throw SolverAbort(e.what(), dump_grid(grid));
      } catch (const ReconstructionError& e) {
        if (attempt >= 20) throw SolverAbort(e.what(), dump_grid(grid));
      }
      dt *= 0.5;
      hits_output = false;
      ++ts.dt_reductions;
    }

    grid = std::move(next);
    t = hits_output ? target : t + dt;
    production += step_production;
    ++ts.steps;
    ts.total_projections += stats.projections;
    ts.limiter_clips += stats.limiter_clips;

    DiagnosticRow row = diagnose(grid, t, spec);
    row.projections = stats.projections;
    row.production_integral = production;
    row.dt = dt;
    ts.diagnostics.push_back(row);
    if (hits_output) {
      ts.snapshots.push_back({t, grid});
      if (sc.output_interval > 0.0) next_output = std::min(next_output + sc.output_interval, sc.t_end);
    }
  }
  if (ts.snapshots.back().t != t) ts.snapshots.push_back({t, grid});
  return ts;
}

TimeSeries euler_reference(const Scenario& sc) {
  Scenario euler = sc;
  euler.model = Model::kEuler;
  return run_scenario(euler);
}

NsLimitReport ns_limit_diagnostic(const TimeSeries& ts, const GasSpec& spec,
                                  int margin) {
  const Grid1D& g = ts.final_snapshot().grid;
  const int N = g.N;
  std::vector<State6> s(N);
  for (int i = 0; i < N; ++i) s[i] = primitive_from_conserved(g.cells[i], spec);
  const bool periodic = g.boundary == Boundary::kPeriodic;
  const int lo = periodic ? 0 : std::max(margin, 1);
  const int hi = periodic ? N : std::min(N - margin, N - 1);
  if (hi - lo < 3) throw std::invalid_argument("margin leaves too few cells");
  auto vx = [&](int i) { return s[((i % N) + N) % N].v.x(); };

  const double coeff = 2.0 / 3.0 * (spec.D() - 3.0) / spec.D() * spec.tau();
  double max_diff = 0.0, max_ref = 0.0, sum_diff = 0.0, sum_ref = 0.0, max_Pi = 0.0;
  double max_dv = 0.0, max_d2v = 0.0, p_sum = 0.0;
  for (int i = lo; i < hi; ++i) {
    const double dvdx = (vx(i + 1) - vx(i - 1)) / (2.0 * g.dx());
    const double ref = -coeff * pressure(s[i], spec) * dvdx;
    const double diff = s[i].Pi - ref;
    max_diff = std::max(max_diff, std::abs(diff));
    max_ref = std::max(max_ref, std::abs(ref));
    sum_diff += diff * diff;
    sum_ref += ref * ref;
    max_Pi = std::max(max_Pi, std::abs(s[i].Pi));
    max_dv = std::max(max_dv, std::abs(vx(i + 1) - vx(i)));
    max_d2v = std::max(max_d2v, std::abs(vx(i + 1) - 2.0 * vx(i) + vx(i - 1)));
    p_sum += pressure(s[i], spec);
  }
  NsLimitReport r;
  r.cells_used = hi - lo;
  r.nu = coeff * p_sum / r.cells_used;
  r.max_deviation = max_ref > 0.0 ? max_diff / max_ref : (max_diff > 0.0 ? INFINITY : 0.0);
  r.l2_deviation = sum_ref > 0.0 ? std::sqrt(sum_diff / sum_ref) : (sum_diff > 0.0 ? INFINITY : 0.0);
  r.max_abs_Pi = max_Pi;
  r.reduced_confidence = max_d2v > 0.25 * max_dv;
  return r;
}

double density_l1(const Grid1D& a, const Grid1D& b, int max_shift) {
  if (a.N != b.N) throw std::invalid_argument("density_l1 needs equal resolutions");
  double best = INFINITY;
  for (int shift = -max_shift; shift <= max_shift; ++shift) {
    std::vector<double> terms;
    terms.reserve(a.N);
    for (int i = 0; i < a.N; ++i) {
      const int j = i + shift;
      if (j < 0 || j >= b.N) continue;
      terms.push_back(std::abs(a.cells[i].F - b.cells[j].F) * a.dx());
    }
    best = std::min(best, pairwise_sum(terms));
  }
  return best;
}

double primitive_l1(const Grid1D& a, const Grid1D& b, const GasSpec& spec) {
  if (a.N != b.N) throw std::invalid_argument("primitive_l1 needs equal resolutions");
  std::vector<double> terms(a.N);
  for (int i = 0; i < a.N; ++i) {
    const State6 sa = primitive_from_conserved(a.cells[i], spec);
    const State6 sb = primitive_from_conserved(b.cells[i], spec);
    terms[i] = (std::abs(sa.rho - sb.rho) + std::abs(sa.v.x() - sb.v.x()) +
                std::abs(pressure(sa, spec) - pressure(sb, spec))) * a.dx();
  }
  return pairwise_sum(terms);
}

Grid1D restrict_by_two(const Grid1D& fine) {
  if (fine.N % 2 != 0) throw std::invalid_argument("restriction needs an even cell count");
  Grid1D coarse = fine;
  coarse.N = fine.N / 2;
  coarse.cells.resize(coarse.N);
  for (int i = 0; i < coarse.N; ++i) {
    coarse.cells[i] = Conserved6::from_vector(
        0.5 * (fine.cells[2 * i].to_vector() + fine.cells[2 * i + 1].to_vector()));
  }
  return coarse;
}

ConvergenceResult self_convergence(const Scenario& base, int levels) {
  if (levels < 3) throw std::invalid_argument("self-convergence needs at least 3 levels");
  ConvergenceResult out;
  std::vector<Grid1D> finals;
  for (int k = 0; k < levels; ++k) {
    Scenario sc = base;
    sc.N = base.N << k;
    out.resolutions.push_back(sc.N);
    finals.push_back(run_scenario(sc).final_snapshot().grid);
  }
  for (int k = 0; k + 1 < levels; ++k) {
    out.errors.push_back(density_l1(finals[k], restrict_by_two(finals[k + 1])));
  }
  for (std::size_t k = 0; k + 1 < out.errors.size(); ++k) {
    out.orders.push_back(std::log2(out.errors[k] / out.errors[k + 1]));
  }
  return out;
}

void write_snapshot_csv(std::ostream& os, const Snapshot& snap,
                        const GasSpec& spec, int precision) {
  os << "x,rho,vx,T,p,Pi,Pi_over_p,h,k\n";
  for (int i = 0; i < snap.grid.N; ++i) {
    const State6 s = primitive_from_conserved(snap.grid.cells[i], spec);
    const EntropyParts e = entropy_parts(s, spec);
    const double p = pressure(s, spec);
    const double cols[] = {snap.grid.x(i), s.rho, s.v.x(), s.T, p, s.Pi, s.Pi / p, e.h, e.k};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      if (c) os << ',';
      os << format_double(cols[c], precision);
    }
    os << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const TimeSeries& ts, int precision) {
  os << "t,total_F,total_Fx,total_Gll,total_entropy,max_abs_Z,projections,total_Fll,production_integral\n";
  for (const DiagnosticRow& r : ts.diagnostics) {
    os << format_double(r.t, precision) << ',' << format_double(r.total_F, precision) << ','
       << format_double(r.total_Fx, precision) << ',' << format_double(r.total_Gll, precision) << ','
       << format_double(r.total_entropy, precision) << ','
       << format_double(r.max_abs_Z, precision) << ',' << r.projections << ','
       << format_double(r.total_Fll, precision) << ','
       << format_double(r.production_integral, precision) << '\n';
  }
}

}  // namespace et6
