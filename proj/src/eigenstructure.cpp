#include "et6/eigenstructure.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace et6 {
namespace {

struct FluxPieces {
  double rho;
  Vec3 v;
  double v_n;
  double kinetic;  // |F_i|^2 / F
  double P;        // p + Pi
};

FluxPieces pieces(const Conserved6& u, const Vec3& n) {
  FluxPieces f;
  f.rho = u.F;
  f.v = u.F_i / u.F;
  f.v_n = f.v.dot(n);
  f.kinetic = u.F_i.squaredNorm() / u.F;
  f.P = (u.F_ll - f.kinetic) / 3.0;
  return f;
}

// Two unit vectors completing n to an orthonormal basis.
std::pair<Vec3, Vec3> tangents(const Vec3& n) {
  const Vec3 trial = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = (trial - trial.dot(n) * n).normalized();
  return {t1, n.cross(t1)};
}

Vec6 normalize_eigenvector(Vec6 d) {
  const double norm = d.norm();
  if (std::abs(d[0]) > 1e-12 * norm) return d / d[0];
  return d / norm;
}

// Conserved perturbation from primitive jumps (delta rho, delta v, delta p,
// delta Pi).
Vec6 conserved_from_jumps(const State6& s, double d_rho, const Vec3& d_v,
                          double d_p, double d_Pi, const GasSpec& spec) {
  const double v2 = s.v.squaredNorm();
  const double kinetic_jump = d_rho * v2 + 2.0 * s.rho * s.v.dot(d_v);
  Vec6 du;
  du[0] = d_rho;
  du.segment<3>(1) = d_rho * s.v + s.rho * d_v;
  du[4] = kinetic_jump + spec.D() * d_p;
  du[5] = kinetic_jump + 3.0 * (d_p + d_Pi);
  return du;
}

State6 require_equilibrium(const Conserved6& u_eq, const GasSpec& spec) {
  const State6 s = primitive_from_conserved(u_eq, spec);
  if (std::abs(s.Pi) > 1e-12 * pressure(s, spec)) {
    std::ostringstream os;
    os << "state is not on the equilibrium manifold (Pi/p = "
       << pressure_ratio(s, spec) << ")";
    throw DomainError(os.str());
  }
  return s;
}

}  // namespace

const char* to_string(WaveFamily family) {
  switch (family) {
    case WaveFamily::kContact: return "contact";
    case WaveFamily::kSound: return "sound";
    case WaveFamily::kOther: return "other";
  }
  return "other";
}

Vec6 flux_along(const Conserved6& u, const Vec3& n, const GasSpec& spec) {
  primitive_from_conserved(u, spec);
  const FluxPieces f = pieces(u, n);
  Vec6 flux;
  flux[0] = u.F_i.dot(n);
  flux.segment<3>(1) = u.F_i * f.v_n + f.P * n;
  flux[4] = (u.G_ll + 2.0 * f.P) * f.v_n;
  flux[5] = (5.0 * f.P + f.kinetic) * f.v_n;
  return flux;
}

Mat6 flux_jacobian(const Conserved6& u, const Vec3& n, const GasSpec& spec) {
  primitive_from_conserved(u, spec);
  const FluxPieces f = pieces(u, n);
  const Vec3& v = f.v;
  const double v2 = v.squaredNorm();
  const double vn = f.v_n;
  const double rho = f.rho;
  const double G = u.G_ll;
  const double P = f.P;

  Mat6 A = Mat6::Zero();
  A.block<1, 3>(0, 1) = n.transpose();
  for (int i = 0; i < 3; ++i) {
    A(1 + i, 0) = -v[i] * vn + n[i] * v2 / 3.0;
    for (int j = 0; j < 3; ++j) {
      A(1 + i, 1 + j) = (i == j ? vn : 0.0) + v[i] * n[j] - 2.0 / 3.0 * n[i] * v[j];
    }
    A(1 + i, 5) = n[i] / 3.0;
  }
  A(4, 0) = 2.0 / 3.0 * v2 * vn - (G + 2.0 * P) * vn / rho;
  A(5, 0) = 2.0 / 3.0 * v2 * vn - (5.0 * P + f.kinetic) * vn / rho;
  for (int j = 0; j < 3; ++j) {
    A(4, 1 + j) = -4.0 / 3.0 * v[j] * vn + (G + 2.0 * P) * n[j] / rho;
    A(5, 1 + j) = -4.0 / 3.0 * v[j] * vn + (5.0 * P + f.kinetic) * n[j] / rho;
  }
  A(4, 4) = vn;
  A(4, 5) = 2.0 / 3.0 * vn;
  A(5, 5) = 5.0 / 3.0 * vn;
  return A;
}

double frozen_sound_speed(const State6& s, const GasSpec& spec) {
  return std::sqrt(5.0 * (pressure(s, spec) + s.Pi) / (3.0 * s.rho));
}

double euler_sound_speed(const State6& s, const GasSpec& spec) {
  const double D = spec.D();
  return std::sqrt((D + 2.0) / D * pressure(s, spec) / s.rho);
}

WaveFan wave_fan(const Conserved6& u, const Vec3& n, const GasSpec& spec,
                 double imaginary_tol) {
  const State6 s = primitive_from_conserved(u, spec);
  const Mat6 A = flux_jacobian(u, n, spec);
  Eigen::EigenSolver<Mat6> solver(A, true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("flux Jacobian eigensolve failed");
  }
  const double c = frozen_sound_speed(s, spec);
  const double vn = s.v.dot(n);
  const double scale = c + std::abs(vn);

  WaveFan fan;
  fan.direction = n;
  fan.max_imaginary = solver.eigenvalues().imag().cwiseAbs().maxCoeff() / scale;
  if (fan.max_imaginary > imaginary_tol) {
    std::ostringstream os;
    os << "complex characteristic speed, |Im|/scale = " << fan.max_imaginary;
    throw HyperbolicityLoss(s, fan.max_imaginary, os.str());
  }

  std::array<int, 6> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return solver.eigenvalues()[a].real() < solver.eigenvalues()[b].real();
  });
  for (int k = 0; k < 6; ++k) {
    const int idx = order[k];
    const double lambda = solver.eigenvalues()[idx].real();
    fan.speeds[k] = lambda;
    fan.eigenvectors.col(k) = normalize_eigenvector(solver.eigenvectors().col(idx).real());
    const double tol = 1e-6 * scale;
    if (std::abs(lambda - vn) <= tol) {
      fan.families[k] = WaveFamily::kContact;
    } else if (std::abs(std::abs(lambda - vn) - c) <= tol) {
      fan.families[k] = WaveFamily::kSound;
    } else {
      fan.families[k] = WaveFamily::kOther;
    }
  }
  return fan;
}

Vec6 AccelerationJump::conserved_perturbation(const State6& base,
                                              const GasSpec& spec) const {
  const double d_p = pressure(base, spec) / base.rho * delta_rho +
                     2.0 / spec.D() * base.rho * delta_eps;
  return conserved_from_jumps(base, delta_rho, delta_v, d_p, delta_Pi, spec);
}

std::array<AccelerationJump, 2> acceleration_wave(const Conserved6& u_eq,
                                                  const Vec3& n,
                                                  double delta_rho,
                                                  const GasSpec& spec) {
  const State6 s = require_equilibrium(u_eq, spec);
  const double D = spec.D();
  const double eps = eos_evaluate(s.rho, s.T, spec).eps;
  const double c = frozen_sound_speed(s, spec);
  std::array<AccelerationJump, 2> out;
  const double branch[2] = {-c, c};
  for (int b = 0; b < 2; ++b) {
    AccelerationJump& j = out[b];
    j.relative_speed = branch[b];
    j.delta_rho = delta_rho;
    j.delta_v = n * branch[b] * delta_rho / s.rho;
    j.delta_eps = 2.0 / D * eps / s.rho * delta_rho;
    j.delta_Pi = 4.0 / (3.0 * D * D) * (D - 3.0) * eps * delta_rho;
  }
  return out;
}

Vec6 dynamic_pressure_gradient(const Conserved6& u, const GasSpec& spec) {
  const Vec3 v = u.F_i / u.F;
  const double D = spec.D();
  Vec6 g;
  g[0] = v.squaredNorm() * (1.0 / 3.0 - 1.0 / D);
  g.segment<3>(1) = v * (2.0 / D - 2.0 / 3.0);
  g[4] = -1.0 / D;
  g[5] = 1.0 / 3.0;
  return g;
}

Mat6 production_jacobian(const Conserved6& u, const GasSpec& spec) {
  Mat6 J = Mat6::Zero();
  J.row(5) = -3.0 / spec.tau() * dynamic_pressure_gradient(u, spec).transpose();
  return J;
}

KConditionReport k_condition(const Conserved6& u_eq, const Vec3& n,
                             const GasSpec& spec, double tol) {
  const State6 s = require_equilibrium(u_eq, spec);
  const WaveFan fan = wave_fan(u_eq, n, spec);
  const Vec6 grad_Pi = dynamic_pressure_gradient(u_eq, spec);
  const Mat6 grad_f = production_jacobian(u_eq, spec);
  const double p = pressure(s, spec);
  const double u_norm = u_eq.to_vector().norm();
  const double c = frozen_sound_speed(s, spec);

  KConditionReport report;
  report.overall_pass = true;
  report.any_marginal = false;
  report.weak_pass = true;

  auto add = [&](double speed, WaveFamily family, const Vec6& d) {
    KConditionEntry e;
    e.speed = speed;
    e.family = family;
    e.eigenvector = d;
    e.delta_Pi = grad_Pi.dot(d);
    e.production_response = (grad_f * d)[5];
    const double scale = p * d.norm() / u_norm;
    e.pass = std::abs(e.delta_Pi) > tol * scale;
    e.marginal = e.pass && std::abs(e.delta_Pi) < kMarginalFraction * scale;
    report.overall_pass = report.overall_pass && e.pass;
    report.any_marginal = report.any_marginal || e.marginal;
    if (family == WaveFamily::kSound) report.weak_pass = report.weak_pass && e.pass;
    report.entries.push_back(e);
  };

  // Numerical contact eigenspace.
  std::vector<int> contact_cols;
  for (int k = 0; k < 6; ++k) {
    if (fan.families[k] == WaveFamily::kContact) contact_cols.push_back(k);
  }
  Eigen::MatrixXd contact(6, static_cast<int>(contact_cols.size()));
  for (std::size_t j = 0; j < contact_cols.size(); ++j) {
    contact.col(static_cast<int>(j)) = fan.eigenvectors.col(contact_cols[j]);
  }

  // Canonical contact basis: delta v_n = 0, delta Pi = -delta p, and every
  // vector carries a pressure jump.
  const auto [t1, t2] = tangents(n);
  const double rho = s.rho;
  const Vec6 canonical[4] = {
      conserved_from_jumps(s, rho, Vec3::Zero(), p, -p, spec),
      conserved_from_jumps(s, 0.0, c * t1, p, -p, spec),
      conserved_from_jumps(s, 0.0, c * t2, p, -p, spec),
      conserved_from_jumps(s, 0.0, Vec3::Zero(), p, -p, spec)};

  report.contact_projection_residual = 0.0;
  const auto qr = contact.colPivHouseholderQr();
  for (const Vec6& b : canonical) {
    const Vec6 projected = contact * qr.solve(b);
    report.contact_projection_residual =
        std::max(report.contact_projection_residual, (b - projected).norm() / b.norm());
    add(s.v.dot(n), WaveFamily::kContact, normalize_eigenvector(projected));
  }
  for (int k = 0; k < 6; ++k) {
    if (fan.families[k] == WaveFamily::kSound) {
      add(fan.speeds[k], WaveFamily::kSound, fan.eigenvectors.col(k));
    }
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const KConditionEntry& a, const KConditionEntry& b) {
                     return a.speed < b.speed;
                   });

  const Eigen::RowVectorXd restricted = grad_Pi.transpose() * contact;
  const double functional_scale = grad_Pi.norm() * contact.colwise().norm().maxCoeff();
  const bool functional_vanishes = restricted.norm() <= 1e-12 * functional_scale;
  const int dim = static_cast<int>(contact_cols.size());
  report.contact_null_dimension = functional_vanishes ? dim : dim - 1;
  return report;
}

namespace {

// Per-component step scale: the largest increment that moves rho and p by
// O(1) relative and Pi by O(1) of its distance to the nearer window edge.
Vec6 fd_scales(const Conserved6& u, const GasSpec& spec) {
  const State6 s = primitive_from_conserved(u, spec);
  const double p = pressure(s, spec);
  const double Z = s.Pi / p;
  const double margin = std::min(1.0 + Z, upper_ratio_bound(spec) - Z);
  const double D = spec.D();
  const double momentum_scale = std::sqrt(u.F * u.G_ll);
  Vec6 dp;
  dp[0] = s.v.squaredNorm() / D;
  dp.segment<3>(1) = -2.0 / D * s.v;
  dp[4] = 1.0 / D;
  dp[5] = 0.0;
  const Vec6 dPi = dynamic_pressure_gradient(u, spec);
  const Vec6 u0 = u.to_vector();
  Vec6 scale;
  for (int k = 0; k < 6; ++k) {
    const double cap = (k >= 1 && k <= 3) ? std::max(std::abs(u0[k]), momentum_scale) : std::abs(u0[k]);
    const double sens = std::max({k == 0 ? 1.0 / s.rho : 0.0, std::abs(dp[k]) / p,
                                  std::abs(dPi[k]) / (p * margin)});
    scale[k] = sens > 0.0 ? std::min(cap, 1.0 / sens) : cap;
  }
  return scale;
}

}  // namespace

Vec6 entropy_gradient_fd(const Conserved6& u, const GasSpec& spec,
                         double relative_step) {
  const Vec6 u0 = u.to_vector();
  const Vec6 scale = fd_scales(u, spec);
  auto h = [&](const Vec6& x) { return entropy_density(Conserved6::from_vector(x), spec); };
  Vec6 grad;
  for (int k = 0; k < 6; ++k) {
    double step = relative_step * scale[k];
    for (int attempt = 0;; ++attempt) {
      try {
        auto central = [&](double a) {
          Vec6 up = u0, dn = u0;
          up[k] += a;
          dn[k] -= a;
          return (h(up) - h(dn)) / (2.0 * a);
        };
        grad[k] = (4.0 * central(0.5 * step) - central(step)) / 3.0;
        break;
      } catch (const DomainError&) {
        if (attempt > 30) throw;
        step *= 0.5;
      }
    }
  }
  return grad;
}

ConvexityReport convexity_check(const Conserved6& u, const GasSpec& spec,
                                double gradient_tol) {
  const State6 s = primitive_from_conserved(u, spec);
  const Vec6 u0 = u.to_vector();
  auto h = [&](const Vec6& x) { return entropy_density(Conserved6::from_vector(x), spec); };

  ConvexityReport report;
  report.reduced_confidence = false;

  const Vec6 w = main_field(s, spec).to_vector();
  const Vec6 coarse = entropy_gradient_fd(u, spec, 2e-3);
  const Vec6 fine = entropy_gradient_fd(u, spec, 1e-3);
  report.gradient_mismatch = (fine - w).cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff();
  if ((coarse - fine).cwiseAbs().maxCoeff() > 1e-3 * w.cwiseAbs().maxCoeff()) {
    report.reduced_confidence = true;
  }
  report.gradient_pass = report.gradient_mismatch <= gradient_tol;

  // Second differences of h with one Richardson halving.
  const Vec6 steps = 1e-2 * fd_scales(u, spec);
  auto hessian = [&](double factor) {
    Mat6 H;
    const double h0 = h(u0);
    for (int k = 0; k < 6; ++k) {
      const double a = factor * steps[k];
      Vec6 up = u0, dn = u0;
      up[k] += a;
      dn[k] -= a;
      H(k, k) = (h(up) - 2.0 * h0 + h(dn)) / (a * a);
      for (int l = k + 1; l < 6; ++l) {
        const double b = factor * steps[l];
        Vec6 pp = u0, pm = u0, mp = u0, mm = u0;
        pp[k] += a; pp[l] += b;
        pm[k] += a; pm[l] -= b;
        mp[k] -= a; mp[l] += b;
        mm[k] -= a; mm[l] -= b;
        H(k, l) = H(l, k) = (h(pp) - h(pm) - h(mp) + h(mm)) / (4.0 * a * b);
      }
    }
    return H;
  };

  Mat6 H;
  Mat6 H_coarse;
  double factor = 1.0;
  for (int attempt = 0;; ++attempt) {
    try {
      H_coarse = hessian(factor);
      const Mat6 H_fine = hessian(0.5 * factor);
      H = (4.0 * H_fine - H_coarse) / 3.0;
      H_coarse = H_fine;
      break;
    } catch (const DomainError&) {
      if (attempt > 30) throw;
      factor *= 0.5;
      report.reduced_confidence = true;
    }
  }
  // Symmetric scaling by the step sizes makes the eigenvalues comparable.
  const Vec6& d = steps;
  const Mat6 scaled = d.asDiagonal() * H * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat6> eig(0.5 * (scaled + scaled.transpose()));
  report.max_hessian_eigenvalue = eig.eigenvalues().maxCoeff();
  report.min_hessian_eigenvalue = eig.eigenvalues().minCoeff();
  const Mat6 scaled_error = d.asDiagonal() * (H - H_coarse) * d.asDiagonal();
  if (std::abs(report.max_hessian_eigenvalue) < 10.0 * scaled_error.norm()) {
    report.reduced_confidence = true;
  }
  report.concave = report.max_hessian_eigenvalue < 0.0;
  report.pass = report.gradient_pass && report.concave;
  return report;
}

}  // namespace et6
