#include "et6/closure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace et6 {
namespace {

const double kLogPi = std::log(std::numbers::pi);

// log(Omega / Omega_E) as a function of Z = Pi/p.
// log(1 + y) - y without cancellation for small |y|.
double log1p_minus_linear(double y) {
  if (std::abs(y) > 0.1) return std::log1p(y) - y;
  // -y^2/2 + y^3/3 - ...; 18 terms reach 1e-19 relative at |y| = 0.1.
  double term = y;
  double sum = 0.0;
  for (int n = 2; n <= 19; ++n) {
    term *= -y;
    sum += term / n;
  }
  return sum;
}

// log(Omega / Omega_E). The linear parts of the two logarithms cancel
// exactly, so they are dropped before summing.
double log_amplitude_ratio(double Z, const GasSpec& spec) {
  const double a = 0.5 * (spec.D() - 3.0);
  return -1.5 * log1p_minus_linear(Z) - a * log1p_minus_linear(-3.0 * Z / (spec.D() - 3.0));
}

void guard(double log_value, const char* name) {
  if (!std::isfinite(log_value) || std::abs(log_value) > kLogOverflowGuard) {
    std::ostringstream os;
    os << "log " << name << " = " << log_value
       << " exceeds the overflow guard " << kLogOverflowGuard;
    throw RangeError(os.str());
  }
}

Multipliers multipliers_at_ratio(double rho, double T, double Z,
                                 const GasSpec& spec) {
  const double p = spec.R() * rho * T;
  const double a = 0.5 * (spec.D() - 3.0);
  const double log_xi = std::log(rho / (2.0 * p)) - std::log1p(Z);
  const double log_zeta = std::log(rho / (spec.m() * p)) -
                          std::log1p(-3.0 * Z / (spec.D() - 3.0));
  guard(log_zeta, "zeta");
  const double log_Omega = std::log(rho) - std::log(spec.m()) - 1.5 * kLogPi -
                           std::lgamma(a) + 1.5 * log_xi + a * log_zeta;
  guard(log_Omega, "Omega");
  return Multipliers{std::exp(log_xi), std::exp(log_zeta),
                     std::exp(log_Omega), log_zeta, log_Omega};
}

}  // namespace

Vec6 MainField::to_vector() const {
  Vec6 w;
  w << lambda, lambda_i.x(), lambda_i.y(), lambda_i.z(), mu_ll, lambda_ll;
  return w;
}

Multipliers multipliers_from_state(const State6& s, const GasSpec& spec) {
  require_admissible(s, spec);
  return multipliers_at_ratio(s.rho, s.T, pressure_ratio(s, spec), spec);
}

Multipliers equilibrium_multipliers(const State6& s, const GasSpec& spec) {
  if (!(s.rho > 0.0) || !(s.T > 0.0)) {
    throw DomainError("density and temperature must be positive");
  }
  return multipliers_at_ratio(s.rho, s.T, 0.0, spec);
}

RestFrameMoments state_from_multipliers(const Multipliers& mul,
                                        const GasSpec& spec) {
  const double a = 0.5 * (spec.D() - 3.0);
  const double m = spec.m();
  const double log_rho = std::log(m) + 1.5 * kLogPi + std::lgamma(a) +
                         mul.log_Omega - 1.5 * std::log(mul.xi) -
                         a * mul.log_zeta;
  const double rho = std::exp(log_rho);
  RestFrameMoments out;
  out.rho = rho;
  out.p_plus_Pi = rho / (2.0 * mul.xi);
  out.rho_eps =
      rho / (4.0 * mul.xi) * (3.0 + 4.0 / m * a * mul.xi / mul.zeta);
  return out;
}

double distribution_value(const Vec3& C, double I, const State6& s,
                          const GasSpec& spec) {
  const Multipliers mul = multipliers_from_state(s, spec);
  return std::exp(mul.log_Omega - mul.zeta * I - mul.xi * C.squaredNorm());
}

double maxwellian_value(const Vec3& C, double I, const State6& s,
                        const GasSpec& spec) {
  const double alpha = spec.alpha();
  const double kT = spec.kB() * s.T;
  const double m = spec.m();
  const double log_f = std::log(s.rho) - std::log(m) - (1.0 + alpha) * std::log(kT) -
                       std::lgamma(1.0 + alpha) +
                       1.5 * std::log(m / (2.0 * std::numbers::pi * kT)) -
                       (0.5 * m * C.squaredNorm() + I) / kT;
  return std::exp(log_f);
}

FluxSet closed_fluxes(const State6& s, const GasSpec& spec) {
  require_admissible(s, spec);
  const Eos eos = eos_evaluate(s.rho, s.T, spec);
  const double P = eos.p + s.Pi;
  const double v2 = s.v.squaredNorm();
  FluxSet out;
  out.F_ik = s.rho * s.v * s.v.transpose() + P * Mat3::Identity();
  out.F_llk = (5.0 * P + s.rho * v2) * s.v;
  out.G_llk = (s.rho * v2 + 2.0 * s.rho * eos.eps + 2.0 * P) * s.v;
  out.P_ll = production_bgk(s, spec);
  return out;
}

double production_bgk(const State6& s, const GasSpec& spec) {
  return -3.0 * s.Pi / spec.tau();
}

double nonequilibrium_entropy(double Z, const GasSpec& spec) {
  return -spec.R() * log_amplitude_ratio(Z, spec);
}

EntropyParts entropy_parts(const State6& s, const GasSpec& spec) {
  const Multipliers mul = multipliers_from_state(s, spec);
  const Multipliers eq = equilibrium_multipliers(s, spec);
  const double R = spec.R();
  EntropyParts out;
  out.h = R * s.rho * (0.5 * spec.D() - mul.log_Omega);
  out.h_eq = R * s.rho * (0.5 * spec.D() - eq.log_Omega);
  out.k = nonequilibrium_entropy(pressure_ratio(s, spec), spec);
  out.g_over_T = R * (1.0 + eq.log_Omega);
  return out;
}

double entropy_density(const Conserved6& u, const GasSpec& spec) {
  return entropy_parts(primitive_from_conserved(u, spec), spec).h;
}

MainField main_field(const State6& s, const GasSpec& spec) {
  require_admissible(s, spec);
  const double Z = pressure_ratio(s, spec);
  const double D = spec.D();
  const double R = spec.R();
  const double one_plus = 1.0 + Z;
  const double one_minus = 1.0 - 3.0 * Z / (D - 3.0);
  const Multipliers eq = equilibrium_multipliers(s, spec);

  MainField w;
  w.lambda = -R * (1.0 + eq.log_Omega) - R * log_amplitude_ratio(Z, spec) +
             s.v.squaredNorm() / (2.0 * s.T * one_plus);
  w.lambda_i = -s.v / (s.T * one_plus);
  w.mu_ll = 1.0 / (2.0 * s.T * one_minus);
  w.lambda_ll = -1.0 / (2.0 * s.T) * D / (D - 3.0) * Z / (one_plus * one_minus);
  return w;
}

MainField boost_main_field(const MainField& rest, const Vec3& v) {
  const double trace = rest.lambda_ll + rest.mu_ll;
  MainField w;
  w.lambda = rest.lambda - rest.lambda_i.dot(v) + trace * v.squaredNorm();
  w.lambda_i = rest.lambda_i - 2.0 * trace * v;
  w.lambda_ll = rest.lambda_ll;
  w.mu_ll = rest.mu_ll;
  return w;
}

}  // namespace et6
