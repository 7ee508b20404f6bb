#include "et6/presets.hpp"

namespace et6::presets {

Scenario homogeneous_relaxation(double Z0, double tau, double t_end, double D) {
  Scenario sc;
  sc.kind = ScenarioKind::kUniformRelaxation;
  sc.gas = GasSpec(D, 1.0, 1.0, tau);
  sc.N = 4;
  sc.boundary = Boundary::kPeriodic;
  sc.Pi_over_p = Z0;
  sc.t_end = t_end;
  sc.output_interval = t_end / 20.0;
  return sc;
}

Scenario ns_limit(double tau, double D, int N) {
  Scenario sc;
  sc.kind = ScenarioKind::kSmoothWave;
  sc.gas = GasSpec(D, 1.0, 1.0, tau);
  sc.N = N;
  sc.x_left = 0.0;
  sc.x_right = 10.0;
  sc.boundary = Boundary::kPeriodic;
  sc.profile = "sine";
  sc.amplitude = 1e-3;
  sc.cfl = 0.01 * (N / 400.0);
  sc.t_end = 50.0 * tau;
  return sc;
}

Scenario monatomic(int N) {
  Scenario sc;
  sc.kind = ScenarioKind::kSmoothWave;
  sc.gas = GasSpec(kMinDegreesOfFreedom, 1.0, 1.0, 1.0);
  sc.N = N;
  sc.boundary = Boundary::kPeriodic;
  sc.profile = "sine";
  sc.amplitude = 0.1;
  sc.t_end = 0.2;
  // CFL 0.45 with the largest expected signal speed of the wave.
  sc.fixed_dt = 0.45 / (N * 1.3 * 1.1 * 1.2);
  return sc;
}

Scenario sod(double tau, int N, double D) {
  Scenario sc;
  sc.kind = ScenarioKind::kRiemann;
  sc.gas = GasSpec(D, 1.0, 1.0, tau);
  sc.N = N;
  sc.boundary = Boundary::kOutflow;
  sc.rho_L = 1.0;
  sc.T_L = 1.0;
  sc.rho_R = 0.125;
  sc.T_R = 0.8;
  sc.x0 = 0.5;
  sc.t_end = 0.15;
  return sc;
}

Scenario periodic_conservation(int steps, int N) {
  Scenario sc;
  sc.kind = ScenarioKind::kSmoothWave;
  sc.gas = GasSpec(5.0, 1.0, 1.0, 0.1);
  sc.N = N;
  sc.boundary = Boundary::kPeriodic;
  sc.amplitude = 0.1;
  sc.vx = 0.3;
  sc.Pi_over_p = 0.1;
  sc.t_end = 1e9;
  sc.max_steps = steps;
  return sc;
}

Scenario convergence(int order, int N) {
  Scenario sc;
  sc.kind = ScenarioKind::kSmoothWave;
  sc.gas = GasSpec(5.0, 1.0, 1.0, 1.0);
  sc.N = N;
  sc.boundary = Boundary::kPeriodic;
  sc.amplitude = 1e-2;
  sc.order = order;
  sc.t_end = 0.3;
  return sc;
}

}  // namespace et6::presets
