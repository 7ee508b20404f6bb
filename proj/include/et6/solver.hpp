#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "et6/closure.hpp"

namespace et6 {

enum class Boundary { kPeriodic, kOutflow, kReflective };
enum class ScenarioKind { kRiemann, kSmoothWave, kUniformRelaxation };
/// kEuler runs the five-field principal subsystem: Pi is held at zero.
enum class Model { kET6, kEuler };

const char* to_string(Boundary b);
const char* to_string(ScenarioKind k);
Boundary parse_boundary(const std::string& text);
ScenarioKind parse_scenario_kind(const std::string& text);

struct Grid1D {
  int N = 0;
  double x_left = 0.0;
  double x_right = 1.0;
  Boundary boundary = Boundary::kPeriodic;
  std::vector<Conserved6> cells;

  double dx() const { return (x_right - x_left) / N; }
  double x(int i) const { return x_left + (i + 0.5) * dx(); }
};

/// Raised when the run cannot continue (too many projections, a
/// non-physical reconstruction, or repeated dt reduction).
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, std::string dump)
      : std::runtime_error(what), dump_(std::move(dump)) {}
  const std::string& dump() const noexcept { return dump_; }

 private:
  std::string dump_;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::kSmoothWave;
  Model model = Model::kET6;
  GasSpec gas;
  int N = 200;
  double x_left = 0.0;
  double x_right = 1.0;
  double cfl = 0.45;
  double t_end = 0.1;
  Boundary boundary = Boundary::kPeriodic;
  /// 1: first-order Rusanov with forward Euler. 2: MUSCL-minmod with SSP-RK2.
  int order = 2;
  /// Positive: use this step instead of the CFL estimate (still clipped to
  /// output times).
  double fixed_dt = 0.0;
  /// Snapshot spacing in time; 0 keeps the initial and final states only.
  double output_interval = 0.0;
  double max_projection_fraction = 0.01;
  /// Stop after this many steps (0 = run to t_end).
  int max_steps = 0;

  /// Uniform / smooth-wave base state, given by (rho, vx, T, Pi/p).
  double rho = 1.0;
  double vx = 0.0;
  double T = 1.0;
  double Pi_over_p = 0.0;
  /// Smooth wave: "sine" (one period over the domain) or "gaussian".
  std::string profile = "sine";
  double amplitude = 1e-2;
  double width = 0.1;

  double rho_L = 1.0, vx_L = 0.0, T_L = 1.0, Pi_over_p_L = 0.0;
  double rho_R = 0.125, vx_R = 0.0, T_R = 0.8, Pi_over_p_R = 0.0;
  double x0 = 0.5;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

Grid1D initial_grid(const Scenario& sc);

struct DiagnosticRow {
  double t;
  double total_F;
  double total_Fx;
  double total_Gll;
  double total_entropy;
  double max_abs_Z;
  int projections;
  double total_Fll;
  /// Accumulated integral of the production over the relaxation substeps.
  double production_integral;
  double dt;
};

struct Snapshot {
  double t;
  Grid1D grid;
};

struct TimeSeries {
  GasSpec gas;
  Model model = Model::kET6;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticRow> diagnostics;
  int steps = 0;
  int total_projections = 0;
  int dt_reductions = 0;
  /// Faces where minmod zeroed a slope at a local extremum.
  long limiter_clips = 0;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

/// Upper bound on |v_x| + sound speed over the grid, times 1.1.
double max_wave_speed(const Grid1D& g, const GasSpec& spec, Model model = Model::kET6);

struct StepStats {
  int projections = 0;
  long limiter_clips = 0;
};

/// Pulls Pi back to 0.999 of the violated bound. Returns true if the cell
/// was modified. The Euler model instead rebuilds F_ll with Pi = 0.
bool project_cell(Conserved6& u, const GasSpec& spec, Model model = Model::kET6);

/// Projects every cell; throws SolverAbort when more than
/// max_fraction * N cells needed it. Returns the count.
int project_grid(Grid1D& g, const GasSpec& spec, Model model, double max_fraction);

/// One explicit step of the homogeneous system. Cells leaving the window are
/// projected back (counted in stats); more than max_projection_fraction of
/// the cells in a single stage aborts.
Grid1D hyperbolic_step(const Grid1D& g, double dt, const GasSpec& spec,
                       int order = 2, Model model = Model::kET6,
                       StepStats* stats = nullptr,
                       double max_projection_fraction = 0.01);

/// Exact solution of dPi/dt = -Pi/tau with F, F_i, G_ll frozen. If
/// production is non-null it receives sum(dF_ll) * dx.
Grid1D relaxation_step_exact(const Grid1D& g, double dt, const GasSpec& spec,
                             double* production = nullptr);

TimeSeries run_scenario(const Scenario& sc);

/// run_scenario on the Euler subsystem with gamma = (D + 2) / D.
TimeSeries euler_reference(const Scenario& sc);

struct NsLimitReport {
  /// Bulk viscosity (2/3)((D-3)/D) p tau at the mean pressure.
  double nu;
  /// sup|Pi + nu dv/dx| / sup|nu dv/dx| over the interior.
  double max_deviation;
  /// Same ratio in the discrete L2 norm.
  double l2_deviation;
  double max_abs_Pi;
  int cells_used;
  bool reduced_confidence;
};

/// Compares the final snapshot against Pi = -nu dv/dx with a local nu.
/// margin cells are skipped at each non-periodic end.
NsLimitReport ns_limit_diagnostic(const TimeSeries& ts, const GasSpec& spec,
                                  int margin = 4);

/// L1 distance of the density profiles, optionally minimized over integer
/// shifts of up to max_shift cells.
double density_l1(const Grid1D& a, const Grid1D& b, int max_shift = 0);

/// L1 distance summed over rho, vx and p.
double primitive_l1(const Grid1D& a, const Grid1D& b, const GasSpec& spec);

/// Cell-averages a grid onto one with N / 2 cells.
Grid1D restrict_by_two(const Grid1D& fine);

struct ConvergenceResult {
  std::vector<int> resolutions;
  /// errors[k] = L1(density) between resolutions[k] and resolutions[k+1].
  std::vector<double> errors;
  /// log2(errors[k] / errors[k+1]).
  std::vector<double> orders;
};

/// Self-convergence on N, 2N, 4N, ... (levels >= 3).
ConvergenceResult self_convergence(const Scenario& base, int levels = 3);

void write_snapshot_csv(std::ostream& os, const Snapshot& snap,
                        const GasSpec& spec, int precision = 12);
void write_diagnostics_csv(std::ostream& os, const TimeSeries& ts,
                           int precision = 12);

}  // namespace et6
