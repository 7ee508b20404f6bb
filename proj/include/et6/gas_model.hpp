#pragma once

#include <Eigen/Core>

#include "et6/errors.hpp"

namespace et6 {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Smallest accepted number of molecular degrees of freedom.
inline constexpr double kMinDegreesOfFreedom = 3.0 + 1e-6;

/// Gas model. D is a real parameter so the monatomic limit D -> 3+ can be
/// approached continuously.
class GasSpec {
 public:
  /// Throws std::invalid_argument when D < 3 + 1e-6 or m, kB, tau <= 0.
  explicit GasSpec(double D = 5.0, double m = 1.0, double kB = 1.0,
                   double tau = 1.0);

  double D() const noexcept { return D_; }
  double m() const noexcept { return m_; }
  double kB() const noexcept { return kB_; }
  double tau() const noexcept { return tau_; }
  /// Internal-energy exponent (D - 5) / 2; always > -1.
  double alpha() const noexcept { return 0.5 * (D_ - 5.0); }
  /// Specific gas constant kB / m.
  double R() const noexcept { return kB_ / m_; }

  GasSpec with_tau(double tau) const { return GasSpec(D_, m_, kB_, tau); }
  GasSpec with_D(double D) const { return GasSpec(D, m_, kB_, tau_); }

 private:
  double D_;
  double m_;
  double kB_;
  double tau_;
};

/// Primitive nonequilibrium state at a point.
struct State6 {
  double rho = 1.0;
  Vec3 v = Vec3::Zero();
  double T = 1.0;
  double Pi = 0.0;
};

/// Densities evolved by the balance laws.
struct Conserved6 {
  double F = 1.0;
  Vec3 F_i = Vec3::Zero();
  double G_ll = 0.0;
  double F_ll = 0.0;

  /// Packed as (F, F_x, F_y, F_z, G_ll, F_ll).
  Vec6 to_vector() const;
  static Conserved6 from_vector(const Vec6& u);
};

struct Eos {
  double p;
  double eps;
};

/// p = (kB/m) rho T, eps = (D/2)(kB/m) T. Throws DomainError if rho or T <= 0.
Eos eos_evaluate(double rho, double T, const GasSpec& spec);

double pressure(const State6& s, const GasSpec& spec);

/// Pi / p.
double pressure_ratio(const State6& s, const GasSpec& spec);

/// Upper end of the admissible Pi/p window, (D - 3) / 3.
inline double upper_ratio_bound(const GasSpec& spec) {
  return (spec.D() - 3.0) / 3.0;
}

/// Builds a state from (rho, v, T) and the ratio Z = Pi/p.
State6 state_from_ratio(double rho, const Vec3& v, double T, double Z,
                        const GasSpec& spec);

Conserved6 conserved_from_primitive(const State6& s, const GasSpec& spec);

/// Inverts conserved_from_primitive. Throws ReconstructionError for
/// non-positive density or internal energy and InadmissibleState when Pi is
/// outside the window.
State6 primitive_from_conserved(const Conserved6& u, const GasSpec& spec);

struct AdmissibilityDiagnostic {
  bool admissible;
  /// Pi/p + 1.
  double lower_margin;
  /// (D-3)/3 - Pi/p.
  double upper_margin;
};

AdmissibilityDiagnostic admissibility(const State6& s, const GasSpec& spec);

/// Throws InadmissibleState (or DomainError for rho, T <= 0) unless s is
/// strictly inside the window.
void require_admissible(const State6& s, const GasSpec& spec);

}  // namespace et6
