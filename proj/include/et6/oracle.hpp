#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "et6/closure.hpp"

namespace et6 {

/// Gauss rules used by the oracle. Velocity axes use Gauss-Hermite nodes
/// scaled by 1/sqrt(xi); the internal energy uses a generalized Laguerre rule
/// whose weight I^alpha exp(-zeta I) is absorbed exactly.
struct QuadratureSpec {
  int hermite_order = 64;
  int laguerre_order = 128;
  /// Laguerre order is doubled up to this value when the Gauss result and
  /// the adaptive fallback disagree.
  int max_laguerre_order = 1024;
  /// Agreement required between the Gauss rules and the adaptive
  /// (tanh-sinh family) fallback, relative to the quantity's natural scale.
  double adaptive_tol = 1e-10;
  bool verify_with_adaptive = true;

  /// Throws std::invalid_argument for orders < 8 or tolerance <= 0.
  void validate() const;
  std::string describe(double alpha) const;
};

enum class Frame { kPeculiar, kLab };

/// coefficient * X_x^a X_y^b X_z^c (X^2)^d I^e where X is the peculiar
/// velocity C or, in the lab frame, the molecular velocity c = C + v.
struct Monomial {
  double coefficient = 1.0;
  std::array<int, 3> component_powers{0, 0, 0};
  int speed_sq_power = 0;
  int energy_power = 0;

  /// Velocity degree, counting I as a squared velocity.
  int degree() const;
};

struct Weight {
  Frame frame = Frame::kPeculiar;
  std::vector<Monomial> terms;

  static Weight unit(Frame frame = Frame::kPeculiar);
  static Weight component(int axis, Frame frame = Frame::kPeculiar);
  /// X^2 + 2 I / m.
  static Weight energy(double m, Frame frame = Frame::kPeculiar);
};

inline constexpr int kMaxMonomialDegree = 6;

/// m * integral of f * weight over (C, I) with measure I^alpha dI dC.
double oracle_moment(const State6& s, const Weight& weight,
                     const GasSpec& spec, const QuadratureSpec& quad = {});

struct OracleEntry {
  std::string quantity;
  double closed_form;
  double quadrature;
  double rel_err;
  std::string rule;
};

/// |a - b| / max(|a|, |b|, floor).
double relative_error(double a, double b, double floor);

struct OracleReport {
  std::vector<OracleEntry> entries;
  double tolerance = 1e-8;

  bool passed() const;
  double max_rel_err() const;
  /// One line per entry above tolerance; empty when everything passed.
  std::string failure_summary() const;
};

/// Quadrature versus closed form for F_ik (six entries), F_llk and G_llk.
OracleReport oracle_flux_check(const State6& s, const GasSpec& spec,
                               const QuadratureSpec& quad = {},
                               double tolerance = 1e-8);

/// Quadrature versus closed form for the constraint moments
/// (F, F_i, G_ll, F_ll).
OracleReport oracle_constraint_check(const State6& s, const GasSpec& spec,
                                     const QuadratureSpec& quad = {},
                                     double tolerance = 1e-10);

/// -kB * integral of f log f, with log f expanded as a polynomial.
double oracle_entropy(const State6& s, const GasSpec& spec,
                      const QuadratureSpec& quad = {});

OracleEntry oracle_entropy_entry(const State6& s, const GasSpec& spec,
                                 const QuadratureSpec& quad = {});

struct MepProbePoint {
  double beta;
  double h;
  bool converged;
  int iterations;
  double residual;
};

struct MepProbeReport {
  double h_closure;
  std::vector<MepProbePoint> points;
  /// Every converged beta > 0 gives h strictly below the beta = 0 value.
  bool maximum_confirmed;
  /// h non-increasing along the (sorted) beta sweep.
  bool monotone;
  /// At least one Newton solve failed to converge.
  bool inconclusive;
};

/// Perturbs the MEP closure with the trial family
///   f_beta = Omega' exp(-zeta' I - xi' C^2 - beta C^4),
/// re-imposes the constraints by damped Newton on quadrature moments and
/// records the entropy. beta = 0 is always evaluated first.
MepProbeReport mep_optimality_probe(const State6& s, const GasSpec& spec,
                                    std::span<const double> amplitudes,
                                    const QuadratureSpec& quad = {});

MepProbeReport mep_optimality_probe(const State6& s, const GasSpec& spec,
                                    double trial_amplitude,
                                    const QuadratureSpec& quad = {});

}  // namespace et6
