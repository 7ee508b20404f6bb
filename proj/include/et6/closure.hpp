#pragma once

#include "et6/gas_model.hpp"

namespace et6 {

/// Parameters of the maximum-entropy distribution
///   f = Omega exp(-zeta I) exp(-xi C^2).
/// zeta and Omega are carried in log form as well since both diverge at the
/// upper end of the window.
struct Multipliers {
  double xi;
  double zeta;
  double Omega;
  double log_zeta;
  double log_Omega;
};

/// Lagrange multipliers conjugate to (F, F_i, F_ll, G_ll).
struct MainField {
  double lambda;
  Vec3 lambda_i;
  double lambda_ll;
  double mu_ll;

  /// Packed in the same order as Conserved6::to_vector().
  Vec6 to_vector() const;
};

struct FluxSet {
  Mat3 F_ik;
  Vec3 F_llk;
  Vec3 G_llk;
  double P_ll;
};

/// Zero-velocity moments reproduced from the multipliers.
struct RestFrameMoments {
  double rho;
  double p_plus_Pi;
  double rho_eps;
};

struct EntropyParts {
  /// Entropy density.
  double h;
  /// Entropy density of the equilibrium state with the same (rho, v, T).
  double h_eq;
  /// Specific nonequilibrium entropy, (h - h_eq) / rho.
  double k;
  /// Chemical potential over temperature.
  double g_over_T;
};

/// |log Omega| or log zeta above this raises RangeError.
inline constexpr double kLogOverflowGuard = 500.0;

Multipliers multipliers_from_state(const State6& s, const GasSpec& spec);

/// Equilibrium multipliers (Pi = 0) for the same rho, T.
Multipliers equilibrium_multipliers(const State6& s, const GasSpec& spec);

RestFrameMoments state_from_multipliers(const Multipliers& mul,
                                        const GasSpec& spec);

/// Phase density at peculiar velocity C and internal energy I.
double distribution_value(const Vec3& C, double I, const State6& s,
                          const GasSpec& spec);

/// The generalized Maxwellian built from (rho, T) alone; Pi is ignored.
double maxwellian_value(const Vec3& C, double I, const State6& s,
                        const GasSpec& spec);

FluxSet closed_fluxes(const State6& s, const GasSpec& spec);

/// BGK production of the F_ll balance, -3 Pi / tau.
double production_bgk(const State6& s, const GasSpec& spec);

/// Specific nonequilibrium entropy as a function of Z = Pi/p alone.
double nonequilibrium_entropy(double Z, const GasSpec& spec);

EntropyParts entropy_parts(const State6& s, const GasSpec& spec);

/// Entropy density h(u) as a function of the conserved variables.
double entropy_density(const Conserved6& u, const GasSpec& spec);

MainField main_field(const State6& s, const GasSpec& spec);

/// Transforms rest-frame multipliers to a frame moving with velocity v.
MainField boost_main_field(const MainField& rest, const Vec3& v);

}  // namespace et6
