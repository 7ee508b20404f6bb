#include "et6/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "et6/quadrature.hpp"

namespace et6 {
namespace {

constexpr double kFloorFraction = 1e-6;
constexpr double kAdaptiveGoal = 1e-14;

double binomial_multinomial(int d, int i, int j) {
  // d! / (i! j! (d-i-j)!)
  return std::exp(std::lgamma(d + 1.0) - std::lgamma(i + 1.0) -
                  std::lgamma(j + 1.0) - std::lgamma(d - i - j + 1.0));
}

// Integrals over (C, I) of a separable polynomial against
// exp(-xi C^2) exp(-zeta I) I^alpha, evaluated factor by factor.
class KineticIntegrator {
 public:
  KineticIntegrator(const State6& s, const GasSpec& spec, int hermite_order,
                    int laguerre_order)
      : spec_(spec),
        mul_(multipliers_from_state(s, spec)),
        velocity_(s.v),
        hermite_(gauss_hermite(hermite_order)),
        laguerre_(gauss_laguerre(laguerre_order, spec.alpha())) {
    const double alpha = spec.alpha();
    log_prefactor_ = std::log(spec.m()) + mul_.log_Omega -
                     1.5 * std::log(mul_.xi) - (1.0 + alpha) * mul_.log_zeta;
  }

  const Multipliers& multipliers() const { return mul_; }

  double moment(const Weight& w) const {
    return assemble(w, [&](int p, double shift) { return axis_gauss(p, shift, false); },
                    [&](int e) { return energy_gauss(e); });
  }

  // Same assembly with |integrand| on every axis: a positive size estimate.
  double magnitude(const Weight& w) const {
    return assemble_abs(w);
  }

  double moment_adaptive(const Weight& w) const {
    return assemble(w, [&](int p, double shift) { return axis_adaptive(p, shift); },
                    [&](int e) { return energy_adaptive(e); });
  }

 private:
  double shift(const Weight& w, int axis) const {
    return w.frame == Frame::kLab ? velocity_[axis] : 0.0;
  }

  template <class Axis, class Energy>
  double assemble(const Weight& w, Axis axis, Energy energy) const {
    std::vector<double> terms;
    for (const Monomial& mono : w.terms) {
      const int d = mono.speed_sq_power;
      const double k_part = energy(mono.energy_power);
      for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
          const int k = d - i - j;
          const double coeff = mono.coefficient * binomial_multinomial(d, i, j);
          terms.push_back(coeff *
                          axis(mono.component_powers[0] + 2 * i, shift(w, 0)) *
                          axis(mono.component_powers[1] + 2 * j, shift(w, 1)) *
                          axis(mono.component_powers[2] + 2 * k, shift(w, 2)) *
                          k_part);
        }
      }
    }
    return std::exp(log_prefactor_) * pairwise_sum(terms);
  }

  double assemble_abs(const Weight& w) const {
    std::vector<double> terms;
    for (const Monomial& mono : w.terms) {
      const int d = mono.speed_sq_power;
      const double k_part = energy_gauss(mono.energy_power);
      for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
          const int k = d - i - j;
          terms.push_back(std::abs(mono.coefficient) * binomial_multinomial(d, i, j) *
                          axis_gauss(mono.component_powers[0] + 2 * i, shift(w, 0), true) *
                          axis_gauss(mono.component_powers[1] + 2 * j, shift(w, 1), true) *
                          axis_gauss(mono.component_powers[2] + 2 * k, shift(w, 2), true) *
                          k_part);
        }
      }
    }
    return std::exp(log_prefactor_) * pairwise_sum(terms);
  }

  // sqrt(xi) * integral exp(-xi C^2) (C + shift)^p dC.
  double axis_gauss(int p, double shift, bool absolute) const {
    const double scale = 1.0 / std::sqrt(mul_.xi);
    std::vector<double> terms(hermite_.nodes.size());
    for (std::size_t a = 0; a < terms.size(); ++a) {
      const double x = std::pow(hermite_.nodes[a] * scale + shift, p);
      terms[a] = hermite_.weights[a] * (absolute ? std::abs(x) : x);
    }
    return pairwise_sum(terms);
  }

  // zeta^(1+alpha) * integral I^(alpha+e) exp(-zeta I) dI.
  double energy_gauss(int e) const {
    std::vector<double> terms(laguerre_.nodes.size());
    for (std::size_t l = 0; l < terms.size(); ++l) {
      terms[l] = laguerre_.weights[l] * std::pow(laguerre_.nodes[l] / mul_.zeta, e);
    }
    return pairwise_sum(terms);
  }

  double axis_adaptive(int p, double shift) const {
    const double scale = 1.0 / std::sqrt(mul_.xi);
    boost::math::quadrature::sinh_sinh<double> integrator;
    auto f = [&](double t) {
      const double damp = std::exp(-t * t);
      return damp == 0.0 ? 0.0 : damp * std::pow(t * scale + shift, p);
    };
    return integrator.integrate(f, kAdaptiveGoal);
  }

  double energy_adaptive(int e) const {
    const double alpha = spec_.alpha();
    const double inf = std::numeric_limits<double>::infinity();
    auto g = [&](double s) { return std::pow(s / mul_.zeta, e); };
    if (alpha >= 0.0) {
      boost::math::quadrature::exp_sinh<double> integrator;
      auto f = [&](double s) {
        const double damp = std::exp(-s);
        return damp == 0.0 ? 0.0 : std::pow(s, alpha) * damp * g(s);
      };
      return integrator.integrate(f, 0.0, inf, kAdaptiveGoal);
    }
    // s = y^q with q = 1/(1+alpha) removes the s^alpha endpoint singularity.
    const double q = 1.0 / (1.0 + alpha);
    auto f = [&](double y) {
      const double s = std::pow(y, q);
      const double damp = std::exp(-s);
      return damp == 0.0 ? 0.0 : damp * g(s);
    };
    boost::math::quadrature::tanh_sinh<double> inner;
    boost::math::quadrature::exp_sinh<double> outer;
    const double head = inner.integrate(f, 0.0, 1.0, kAdaptiveGoal);
    const double tail = outer.integrate(f, 1.0, inf, kAdaptiveGoal);
    return q * (head + tail);
  }

  GasSpec spec_;
  Multipliers mul_;
  Vec3 velocity_;
  GaussRule hermite_;
  GaussRule laguerre_;
  double log_prefactor_;
};

struct MomentResult {
  double value;
  double scale;
  std::string rule;
};

MomentResult checked_moment(const State6& s, const Weight& weight,
                            const GasSpec& spec, const QuadratureSpec& quad) {
  quad.validate();
  for (const Monomial& mono : weight.terms) {
    if (mono.degree() > kMaxMonomialDegree) {
      throw std::invalid_argument("monomial degree exceeds 6");
    }
  }
  int hermite = quad.hermite_order;
  int laguerre = quad.laguerre_order;
  double adaptive = 0.0;
  bool have_adaptive = false;
  for (;;) {
    QuadratureSpec current = quad;
    current.hermite_order = hermite;
    current.laguerre_order = laguerre;
    const KineticIntegrator integrator(s, spec, hermite, laguerre);
    const double value = integrator.moment(weight);
    const double scale = integrator.magnitude(weight);
    if (!quad.verify_with_adaptive) {
      return {value, scale, current.describe(spec.alpha())};
    }
    if (!have_adaptive) {
      adaptive = integrator.moment_adaptive(weight);
      have_adaptive = true;
    }
    if (std::abs(value - adaptive) <= quad.adaptive_tol * std::max(scale, std::abs(value))) {
      return {value, scale, current.describe(spec.alpha()) + "+adaptive"};
    }
    if (2 * laguerre > quad.max_laguerre_order) {
      std::ostringstream os;
      os.precision(16);
      os << "Gauss rule (" << value << ") and adaptive fallback (" << adaptive
         << ") disagree beyond " << quad.adaptive_tol << " at Laguerre order "
         << laguerre;
      throw OracleError(os.str());
    }
    hermite *= 2;
    laguerre *= 2;
  }
}

Monomial mono(double c, int ax, int ay, int az, int d = 0, int e = 0) {
  return Monomial{c, {ax, ay, az}, d, e};
}

const char* kAxisName[3] = {"x", "y", "z"};

}  // namespace

void QuadratureSpec::validate() const {
  if (hermite_order < 8 || laguerre_order < 8) {
    throw std::invalid_argument("quadrature orders must be >= 8");
  }
  if (max_laguerre_order < laguerre_order) {
    throw std::invalid_argument("max_laguerre_order below laguerre_order");
  }
  if (!(adaptive_tol > 0.0)) {
    throw std::invalid_argument("adaptive tolerance must be > 0");
  }
}

std::string QuadratureSpec::describe(double alpha) const {
  std::ostringstream os;
  os << "GH" << hermite_order << "^3xGL" << laguerre_order << "(alpha=" << alpha
     << ")";
  return os.str();
}

int Monomial::degree() const {
  return component_powers[0] + component_powers[1] + component_powers[2] +
         2 * speed_sq_power + 2 * energy_power;
}

Weight Weight::unit(Frame frame) { return Weight{frame, {mono(1.0, 0, 0, 0)}}; }

Weight Weight::component(int axis, Frame frame) {
  Monomial m = mono(1.0, 0, 0, 0);
  m.component_powers.at(axis) = 1;
  return Weight{frame, {m}};
}

Weight Weight::energy(double m, Frame frame) {
  return Weight{frame, {mono(1.0, 0, 0, 0, 1, 0), mono(2.0 / m, 0, 0, 0, 0, 1)}};
}

double oracle_moment(const State6& s, const Weight& weight, const GasSpec& spec,
                     const QuadratureSpec& quad) {
  return checked_moment(s, weight, spec, quad).value;
}

double relative_error(double a, double b, double floor) {
  const double denom = std::max({std::abs(a), std::abs(b), floor});
  if (denom == 0.0) return 0.0;
  return std::abs(a - b) / denom;
}

bool OracleReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [&](const OracleEntry& e) {
    return e.rel_err <= tolerance;
  });
}

double OracleReport::max_rel_err() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.rel_err);
  return worst;
}

std::string OracleReport::failure_summary() const {
  std::ostringstream os;
  os.precision(6);
  for (const auto& e : entries) {
    if (e.rel_err > tolerance) {
      os << e.quantity << ": closed form " << e.closed_form << ", quadrature "
         << e.quadrature << ", rel_err " << e.rel_err << " > " << tolerance
         << '\n';
    }
  }
  return os.str();
}

OracleReport oracle_flux_check(const State6& s, const GasSpec& spec,
                               const QuadratureSpec& quad, double tolerance) {
  const FluxSet closed = closed_fluxes(s, spec);
  OracleReport report;
  report.tolerance = tolerance;
  auto add = [&](std::string name, double closed_value, const Weight& w) {
    const MomentResult q = checked_moment(s, w, spec, quad);
    report.entries.push_back(OracleEntry{
        std::move(name), closed_value, q.value,
        relative_error(closed_value, q.value, kFloorFraction * q.scale), q.rule});
  };
  for (int i = 0; i < 3; ++i) {
    for (int k = i; k < 3; ++k) {
      Monomial m = mono(1.0, 0, 0, 0);
      ++m.component_powers[i];
      ++m.component_powers[k];
      add(std::string("F_") + kAxisName[i] + kAxisName[k], closed.F_ik(i, k),
          Weight{Frame::kLab, {m}});
    }
  }
  for (int k = 0; k < 3; ++k) {
    Monomial m = mono(1.0, 0, 0, 0, 1, 0);
    m.component_powers[k] = 1;
    add(std::string("F_ll") + kAxisName[k], closed.F_llk[k], Weight{Frame::kLab, {m}});
  }
  for (int k = 0; k < 3; ++k) {
    Monomial kinetic = mono(1.0, 0, 0, 0, 1, 0);
    Monomial internal = mono(2.0 / spec.m(), 0, 0, 0, 0, 1);
    kinetic.component_powers[k] = 1;
    internal.component_powers[k] = 1;
    add(std::string("G_ll") + kAxisName[k], closed.G_llk[k],
        Weight{Frame::kLab, {kinetic, internal}});
  }
  return report;
}

OracleReport oracle_constraint_check(const State6& s, const GasSpec& spec,
                                     const QuadratureSpec& quad,
                                     double tolerance) {
  const Conserved6 u = conserved_from_primitive(s, spec);
  OracleReport report;
  report.tolerance = tolerance;
  auto add = [&](std::string name, double closed_value, const Weight& w) {
    const MomentResult q = checked_moment(s, w, spec, quad);
    report.entries.push_back(OracleEntry{
        std::move(name), closed_value, q.value,
        relative_error(closed_value, q.value, kFloorFraction * q.scale), q.rule});
  };
  add("F", u.F, Weight::unit(Frame::kLab));
  for (int k = 0; k < 3; ++k) {
    add(std::string("F_") + kAxisName[k], u.F_i[k], Weight::component(k, Frame::kLab));
  }
  add("G_ll", u.G_ll, Weight::energy(spec.m(), Frame::kLab));
  add("F_ll", u.F_ll, Weight{Frame::kLab, {mono(1.0, 0, 0, 0, 1, 0)}});
  return report;
}

double oracle_entropy(const State6& s, const GasSpec& spec,
                      const QuadratureSpec& quad) {
  const Multipliers mul = multipliers_from_state(s, spec);
  // log f = log Omega - zeta I - xi C^2 turns f log f into a polynomial.
  const Weight w{Frame::kPeculiar,
                 {mono(mul.log_Omega, 0, 0, 0), mono(-mul.zeta, 0, 0, 0, 0, 1),
                  mono(-mul.xi, 0, 0, 0, 1, 0)}};
  return -spec.kB() / spec.m() * checked_moment(s, w, spec, quad).value;
}

OracleEntry oracle_entropy_entry(const State6& s, const GasSpec& spec,
                                 const QuadratureSpec& quad) {
  const Multipliers mul = multipliers_from_state(s, spec);
  const Weight w{Frame::kPeculiar,
                 {mono(mul.log_Omega, 0, 0, 0), mono(-mul.zeta, 0, 0, 0, 0, 1),
                  mono(-mul.xi, 0, 0, 0, 1, 0)}};
  const MomentResult q = checked_moment(s, w, spec, quad);
  const double numeric = -spec.kB() / spec.m() * q.value;
  const double closed = entropy_parts(s, spec).h;
  const double floor = kFloorFraction * spec.kB() / spec.m() * q.scale;
  return OracleEntry{"h", closed, numeric, relative_error(closed, numeric, floor),
                     q.rule};
}

namespace {

// Radial and internal-energy moments of the beta-perturbed trial family.
class TrialMoments {
 public:
  TrialMoments(const GaussRule& hermite, const GaussRule& laguerre, double alpha)
      : hermite_(hermite), laguerre_(laguerre), alpha_(alpha) {}

  // integral d^3C C^(2k) exp(-xi C^2 - beta C^4), k = 0..3
  std::array<double, 4> radial(double xi, double beta) const {
    std::array<double, 4> out{};
    for (int k = 0; k < 4; ++k) {
      std::vector<double> terms(hermite_.nodes.size());
      for (std::size_t a = 0; a < terms.size(); ++a) {
        const double t = hermite_.nodes[a];
        const double t2 = t * t;
        terms[a] = hermite_.weights[a] * std::pow(t2, 1 + k) *
                   std::exp(-beta * t2 * t2 / (xi * xi));
      }
      out[k] = 2.0 * std::numbers::pi * std::pow(xi, -(3.0 + 2.0 * k) / 2.0) *
               pairwise_sum(terms);
    }
    return out;
  }

  // integral I^(alpha+j) exp(-zeta I) dI, j = 0..2
  std::array<double, 3> energy(double zeta) const {
    std::array<double, 3> out{};
    for (int j = 0; j < 3; ++j) {
      std::vector<double> terms(laguerre_.nodes.size());
      for (std::size_t l = 0; l < terms.size(); ++l) {
        terms[l] = laguerre_.weights[l] * std::pow(laguerre_.nodes[l], j);
      }
      out[j] = std::pow(zeta, -(1.0 + alpha_ + j)) * pairwise_sum(terms);
    }
    return out;
  }

 private:
  const GaussRule& hermite_;
  const GaussRule& laguerre_;
  double alpha_;
};

}  // namespace

MepProbeReport mep_optimality_probe(const State6& s, const GasSpec& spec,
                                    std::span<const double> amplitudes,
                                    const QuadratureSpec& quad) {
  quad.validate();
  for (double beta : amplitudes) {
    if (!(beta >= 0.0)) throw std::invalid_argument("trial amplitude must be >= 0");
  }
  const Multipliers closure = multipliers_from_state(s, spec);
  const double m = spec.m();
  const double rho = s.rho;
  const double P = pressure(s, spec) + s.Pi;
  const double two_rho_eps = spec.D() * pressure(s, spec);
  const Eigen::Vector3d target_log(std::log(rho), std::log(3.0 * P),
                                   std::log(two_rho_eps));

  const GaussRule hermite = gauss_hermite(2 * quad.hermite_order);
  const GaussRule laguerre = gauss_laguerre(quad.laguerre_order, spec.alpha());
  const TrialMoments moments(hermite, laguerre, spec.alpha());

  std::vector<double> betas(amplitudes.begin(), amplitudes.end());
  betas.push_back(0.0);
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

  MepProbeReport report;
  report.h_closure = entropy_parts(s, spec).h;
  report.inconclusive = false;

  // Unknowns y = (log Omega', log xi', log zeta'), warm-started along the sweep.
  Eigen::Vector3d y(closure.log_Omega, std::log(closure.xi), closure.log_zeta);
  for (double beta : betas) {
    auto residual = [&](const Eigen::Vector3d& yy, Eigen::Matrix3d* jac) -> Eigen::Vector3d {
      const double Omega = std::exp(yy[0]);
      const double xi = std::exp(yy[1]);
      const double zeta = std::exp(yy[2]);
      const auto R = moments.radial(xi, beta);
      const auto L = moments.energy(zeta);
      const double M0 = m * Omega * R[0] * L[0];
      const double M1 = m * Omega * R[1] * L[0];
      const double M2 = m * Omega * (R[1] * L[0] + 2.0 / m * R[0] * L[1]);
      if (jac) {
        Eigen::Matrix3d& J = *jac;
        J.col(0).setOnes();
        J(0, 1) = -xi * R[1] / R[0];
        J(0, 2) = -zeta * L[1] / L[0];
        J(1, 1) = -xi * R[2] / R[1];
        J(1, 2) = -zeta * L[1] / L[0];
        J(2, 1) = m * Omega * (-xi * R[2] * L[0] - 2.0 / m * xi * R[1] * L[1]) / M2;
        J(2, 2) = m * Omega * (-zeta * R[1] * L[1] - 2.0 / m * zeta * R[0] * L[2]) / M2;
      }
      return Eigen::Vector3d(std::log(M0), std::log(M1), std::log(M2)) - target_log;
    };

    MepProbePoint point{beta, 0.0, false, 0, 0.0};
    Eigen::Matrix3d J;
    Eigen::Vector3d r = residual(y, &J);
    for (int it = 0; it < 100; ++it) {
      point.iterations = it;
      if (r.cwiseAbs().maxCoeff() < 1e-14) {
        point.converged = true;
        break;
      }
      const Eigen::Vector3d step = J.partialPivLu().solve(-r);
      double damping = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving) {
        const Eigen::Vector3d trial = y + damping * step;
        Eigen::Matrix3d J_trial;
        const Eigen::Vector3d r_trial = residual(trial, &J_trial);
        if (r_trial.allFinite() && r_trial.norm() < r.norm()) {
          y = trial;
          r = r_trial;
          J = J_trial;
          accepted = true;
          break;
        }
        damping *= 0.5;
      }
      if (!accepted) {
        point.converged = r.cwiseAbs().maxCoeff() < 1e-12;
        break;
      }
    }
    point.residual = r.cwiseAbs().maxCoeff();
    if (!point.converged) report.inconclusive = true;

    const double Omega = std::exp(y[0]);
    const double xi = std::exp(y[1]);
    const double zeta = std::exp(y[2]);
    const auto R = moments.radial(xi, beta);
    const auto L = moments.energy(zeta);
    // -kB * integral f log f with log f = log Omega' - zeta' I - xi' C^2 - beta C^4
    point.h = -spec.kB() * Omega *
              (y[0] * R[0] * L[0] - zeta * R[0] * L[1] - xi * R[1] * L[0] -
               beta * R[2] * L[0]);
    report.points.push_back(point);
  }

  const double h0 = report.points.front().h;
  report.maximum_confirmed = true;
  report.monotone = true;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    const MepProbePoint& pt = report.points[i];
    if (!pt.converged) continue;
    if (!(pt.h < h0)) report.maximum_confirmed = false;
    if (pt.h > report.points[i - 1].h) report.monotone = false;
  }
  return report;
}

MepProbeReport mep_optimality_probe(const State6& s, const GasSpec& spec,
                                    double trial_amplitude,
                                    const QuadratureSpec& quad) {
  const double betas[] = {trial_amplitude};
  return mep_optimality_probe(s, spec, betas, quad);
}

}  // namespace et6
