#include "et6/gas_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace et6 {

GasSpec::GasSpec(double D, double m, double kB, double tau)
    : D_(D), m_(m), kB_(kB), tau_(tau) {
  if (!(D >= kMinDegreesOfFreedom)) {
    std::ostringstream os;
    os << "degrees of freedom D = " << D << " must satisfy D >= 3 + 1e-6";
    throw std::invalid_argument(os.str());
  }
  if (!(m > 0.0)) throw std::invalid_argument("molecular mass m must be > 0");
  if (!(kB > 0.0)) throw std::invalid_argument("Boltzmann constant kB must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("relaxation time tau must be > 0");
}

Vec6 Conserved6::to_vector() const {
  Vec6 u;
  u << F, F_i.x(), F_i.y(), F_i.z(), G_ll, F_ll;
  return u;
}

Conserved6 Conserved6::from_vector(const Vec6& u) {
  return Conserved6{u[0], Vec3(u[1], u[2], u[3]), u[4], u[5]};
}

Eos eos_evaluate(double rho, double T, const GasSpec& spec) {
  if (!(rho > 0.0)) throw DomainError("density must be positive");
  if (!(T > 0.0)) throw DomainError("temperature must be positive");
  const double R = spec.R();
  return Eos{R * rho * T, 0.5 * spec.D() * R * T};
}

double pressure(const State6& s, const GasSpec& spec) {
  return spec.R() * s.rho * s.T;
}

double pressure_ratio(const State6& s, const GasSpec& spec) {
  return s.Pi / pressure(s, spec);
}

State6 state_from_ratio(double rho, const Vec3& v, double T, double Z,
                        const GasSpec& spec) {
  const Eos eos = eos_evaluate(rho, T, spec);
  return State6{rho, v, T, Z * eos.p};
}

Conserved6 conserved_from_primitive(const State6& s, const GasSpec& spec) {
  const Eos eos = eos_evaluate(s.rho, s.T, spec);
  const double kinetic = s.rho * s.v.squaredNorm();
  Conserved6 u;
  u.F = s.rho;
  u.F_i = s.rho * s.v;
  u.G_ll = kinetic + 2.0 * s.rho * eos.eps;
  u.F_ll = kinetic + 3.0 * (eos.p + s.Pi);
  return u;
}

State6 primitive_from_conserved(const Conserved6& u, const GasSpec& spec) {
  if (!(u.F > 0.0)) throw ReconstructionError("non-positive mass density F");
  State6 s;
  s.rho = u.F;
  s.v = u.F_i / u.F;
  const double kinetic = u.F_i.squaredNorm() / u.F;
  const double rho_eps = 0.5 * (u.G_ll - kinetic);
  if (!(rho_eps > 0.0)) {
    throw ReconstructionError("non-positive internal energy G_ll - |F_i|^2/F");
  }
  const double p = 2.0 * rho_eps / spec.D();
  s.T = p / (spec.R() * s.rho);
  s.Pi = (u.F_ll - kinetic) / 3.0 - p;
  require_admissible(s, spec);
  return s;
}

AdmissibilityDiagnostic admissibility(const State6& s, const GasSpec& spec) {
  const double Z = pressure_ratio(s, spec);
  const double lower = Z + 1.0;
  const double upper = upper_ratio_bound(spec) - Z;
  return {lower > 0.0 && upper > 0.0, lower, upper};
}

void require_admissible(const State6& s, const GasSpec& spec) {
  if (!(s.rho > 0.0)) throw DomainError("density must be positive");
  if (!(s.T > 0.0)) throw DomainError("temperature must be positive");
  const AdmissibilityDiagnostic d = admissibility(s, spec);
  if (d.admissible) return;
  std::ostringstream os;
  os.precision(10);
  const double Z = pressure_ratio(s, spec);
  if (!(d.lower_margin > 0.0)) {
    os << "dynamic pressure below the lower bound: Pi/p = " << Z
       << " <= -1 (margin " << d.lower_margin << ")";
    throw InadmissibleState(WindowBound::kLower, d.lower_margin, os.str());
  }
  os << "dynamic pressure above the upper bound: Pi/p = " << Z
     << " >= (D-3)/3 = " << upper_ratio_bound(spec) << " (margin "
     << d.upper_margin << ")";
  throw InadmissibleState(WindowBound::kUpper, d.upper_margin, os.str());
}

}  // namespace et6
