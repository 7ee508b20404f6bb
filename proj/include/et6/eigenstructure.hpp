#pragma once

#include <array>
#include <string>
#include <vector>

#include "et6/closure.hpp"

namespace et6 {

enum class WaveFamily { kContact, kSound, kOther };

const char* to_string(WaveFamily family);

/// Characteristic fan of the flux Jacobian in direction n. Eigenvalues are
/// ascending; eigenvectors (columns) are scaled to unit density component
/// where that component is nonzero and to unit norm otherwise.
struct WaveFan {
  Vec3 direction;
  std::array<double, 6> speeds;
  Mat6 eigenvectors;
  std::array<WaveFamily, 6> families;
  /// Largest |Im(lambda)| found, relative to the sound-speed scale.
  double max_imaginary;
};

/// Thrown when the Jacobian has a complex eigenvalue pair beyond tolerance.
class HyperbolicityLoss : public std::runtime_error {
 public:
  HyperbolicityLoss(const State6& state, double margin, const std::string& what)
      : std::runtime_error(what), state_(state), margin_(margin) {}
  const State6& state() const noexcept { return state_; }
  double margin() const noexcept { return margin_; }

 private:
  State6 state_;
  double margin_;
};

/// Flux F^i n_i packed like Conserved6::to_vector().
Vec6 flux_along(const Conserved6& u, const Vec3& n, const GasSpec& spec);

/// Analytic d(F^i n_i)/du.
Mat6 flux_jacobian(const Conserved6& u, const Vec3& n, const GasSpec& spec);

/// Frozen sound speed sqrt(5 (p + Pi) / (3 rho)).
double frozen_sound_speed(const State6& s, const GasSpec& spec);

/// Equilibrium sound speed of the five-field Euler subsystem,
/// sqrt((D + 2) p / (D rho)).
double euler_sound_speed(const State6& s, const GasSpec& spec);

WaveFan wave_fan(const Conserved6& u, const Vec3& n, const GasSpec& spec,
                 double imaginary_tol = 1e-10);

struct AccelerationJump {
  /// Speed relative to the fluid, V = U - v_n.
  double relative_speed;
  double delta_rho;
  Vec3 delta_v;
  double delta_eps;
  double delta_Pi;

  /// The same jump expressed as a perturbation of the conserved variables.
  Vec6 conserved_perturbation(const State6& base, const GasSpec& spec) const;
};

/// Jump amplitudes of the two sound branches (V = -c, V = +c) at an
/// equilibrium state. Throws DomainError when Pi != 0.
std::array<AccelerationJump, 2> acceleration_wave(const Conserved6& u_eq,
                                                  const Vec3& n,
                                                  double delta_rho,
                                                  const GasSpec& spec);

/// Gradient of Pi(u) with respect to the conserved variables.
Vec6 dynamic_pressure_gradient(const Conserved6& u, const GasSpec& spec);

/// Jacobian of the production vector (0, ..., 0, -3 Pi / tau).
Mat6 production_jacobian(const Conserved6& u, const GasSpec& spec);

struct KConditionEntry {
  double speed;
  WaveFamily family;
  Vec6 eigenvector;
  /// (grad f . d) in the F_ll row.
  double production_response;
  double delta_Pi;
  bool pass;
  /// Passes, but |delta Pi| is below kMarginalFraction of the scale.
  bool marginal;
};

struct KConditionReport {
  std::vector<KConditionEntry> entries;
  bool overall_pass;
  bool any_marginal;
  /// The sound (genuinely nonlinear) eigenvectors alone pass.
  bool weak_pass;
  /// Dimension of the contact eigenspace lying inside the null space of
  /// grad f. The reported contact basis avoids it, the full space does not.
  int contact_null_dimension;
  /// Distance of the canonical contact basis from the numerical contact
  /// eigenspace (projection residual).
  double contact_projection_residual;
};

inline constexpr double kKConditionTol = 1e-10;
inline constexpr double kMarginalFraction = 1e-4;

/// tol is the pass threshold on |delta Pi| relative to p |d| / |u|.
KConditionReport k_condition(const Conserved6& u_eq, const Vec3& n,
                             const GasSpec& spec, double tol = kKConditionTol);

struct ConvexityReport {
  /// max_k |dh/du_k - w_k| / max_k |w_k| with w the main field.
  double gradient_mismatch;
  double max_hessian_eigenvalue;
  double min_hessian_eigenvalue;
  bool gradient_pass;
  bool concave;
  bool pass;
  /// Finite differences unreliable (near the window boundary or Richardson
  /// estimates inconsistent).
  bool reduced_confidence;
};

ConvexityReport convexity_check(const Conserved6& u, const GasSpec& spec,
                                double gradient_tol = 1e-6);

/// Central-difference gradient of h(u) with one Richardson step-halving.
Vec6 entropy_gradient_fd(const Conserved6& u, const GasSpec& spec,
                         double relative_step = 1e-3);

}  // namespace et6
