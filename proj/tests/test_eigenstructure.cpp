#include <doctest.h>

#include <cmath>

#include <Eigen/Geometry>

#include "et6/eigenstructure.hpp"
#include "support.hpp"

using namespace et6;
using et6::test::rel;

namespace {
const Vec3 kX(1, 0, 0);

Vec6 fd_pi_gradient(const Conserved6& u, const GasSpec& g) {
  const Vec6 base = u.to_vector();
  Vec6 out;
  for (int k = 0; k < 6; ++k) {
    const double h = 1e-5 * std::max(1.0, std::abs(base[k]));
    Vec6 a = base, b = base;
    a[k] += h;
    b[k] -= h;
    out[k] = (primitive_from_conserved(Conserved6::from_vector(a), g).Pi -
              primitive_from_conserved(Conserved6::from_vector(b), g).Pi) / (2 * h);
  }
  return out;
}
}  // namespace

TEST_SUITE("eigenstructure") {

TEST_CASE("equilibrium wave speeds") {
  for (double D : {5.0, 7.0}) {
    const GasSpec g(D);
    const WaveFan fan = wave_fan(conserved_from_primitive(State6{}, g), kX, g);
    const double c = std::sqrt(5.0 / 3.0);
    CHECK(std::abs(fan.speeds[0] + c) < 1e-10);
    CHECK(std::abs(fan.speeds[5] - c) < 1e-10);
    for (int k = 1; k < 5; ++k) CHECK(std::abs(fan.speeds[k]) < 1e-10);
    CHECK(fan.families[0] == WaveFamily::kSound);
    CHECK(fan.families[2] == WaveFamily::kContact);
    CHECK(fan.max_imaginary < 1e-12);
  }
  CHECK(std::sqrt(5.0 / 3.0) == doctest::Approx(1.2909944).epsilon(1e-7));
}

TEST_CASE("speeds stay real off equilibrium and match the frozen sound speed") {
  const GasSpec g(5.0);
  const State6 s{1.0, Vec3::Zero(), 1.0, 0.3};
  const WaveFan fan = wave_fan(conserved_from_primitive(s, g), kX, g);
  CHECK(fan.max_imaginary < 1e-10);
  CHECK(rel(fan.speeds[5], std::sqrt(5.0 * 1.3 / 3.0)) < 1e-10);
  CHECK(rel(frozen_sound_speed(s, g), std::sqrt(5.0 * 1.3 / 3.0)) < 1e-15);
  CHECK(rel(euler_sound_speed(s, g), std::sqrt(7.0 / 5.0)) < 1e-15);

  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const State6 r = test::random_state(rng, g, 0.99);
    CHECK_NOTHROW(wave_fan(conserved_from_primitive(r, g), kX, g));
  }
}

TEST_CASE("analytic flux Jacobian against finite differences") {
  std::mt19937_64 rng(29);
  for (double D : {3.5, 5.0, 8.0}) {
    const GasSpec g(D, 1.3, 0.8);
    for (int k = 0; k < 10; ++k) {
      const Conserved6 u = conserved_from_primitive(test::random_state(rng, g), g);
      const Vec3 n = Vec3(0.3, -0.8, 0.5).normalized();
      const Mat6 J = flux_jacobian(u, n, g);
      const Vec6 base = u.to_vector();
      for (int c = 0; c < 6; ++c) {
        const double h = 1e-6 * std::max(1.0, std::abs(base[c]));
        Vec6 a = base, b = base;
        a[c] += h;
        b[c] -= h;
        const Vec6 col = (flux_along(Conserved6::from_vector(a), n, g) -
                          flux_along(Conserved6::from_vector(b), n, g)) / (2 * h);
        CHECK((col - J.col(c)).norm() < 1e-6 * std::max(1.0, J.norm()));
      }
    }
  }
}

TEST_CASE("eigenpairs satisfy J r = lambda r") {
  const GasSpec g(6.0);
  const Conserved6 u = conserved_from_primitive(State6{0.7, Vec3(0.2, 0.4, 0), 1.5, -0.2}, g);
  const WaveFan fan = wave_fan(u, kX, g);
  const Mat6 J = flux_jacobian(u, kX, g);
  for (int k = 0; k < 6; ++k) {
    const Vec6 r = fan.eigenvectors.col(k);
    CHECK((J * r - fan.speeds[k] * r).norm() < 1e-9 * r.norm() * std::max(1.0, J.norm()));
  }
}

TEST_CASE("Galilean shift and rotation of the fan") {
  const GasSpec g(5.0);
  const State6 rest{1.1, Vec3::Zero(), 0.9, 0.15};
  State6 moving = rest;
  moving.v = Vec3(0.7, -0.3, 0.2);
  const WaveFan a = wave_fan(conserved_from_primitive(rest, g), kX, g);
  const WaveFan b = wave_fan(conserved_from_primitive(moving, g), kX, g);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(b.speeds[k] - a.speeds[k] - 0.7) < 1e-10);

  const Eigen::Matrix3d Q = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  State6 rotated = moving;
  rotated.v = Q * moving.v;
  const WaveFan c = wave_fan(conserved_from_primitive(rotated, g), Q * kX, g);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(c.speeds[k] - b.speeds[k]) < 1e-10);
}

TEST_CASE("acceleration wave jumps at equilibrium") {
  const GasSpec g(5.0);
  const Conserved6 u = conserved_from_primitive(State6{}, g);
  const auto jumps = acceleration_wave(u, kX, 1.0, g);
  const WaveFan fan = wave_fan(u, kX, g);
  for (const AccelerationJump& j : jumps) {
    CHECK(std::abs(std::abs(j.relative_speed) - std::sqrt(5.0 / 3.0)) < 1e-12);
    CHECK(j.delta_Pi == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
    CHECK(j.delta_eps == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j.delta_rho == 1.0);
    // Same direction as the fan eigenvector for that speed.
    const int col = j.relative_speed < 0 ? 0 : 5;
    const Vec6 d = j.conserved_perturbation(State6{}, g);
    const Vec6 r = fan.eigenvectors.col(col);
    CHECK((d / d[0] - r / r[0]).norm() < 1e-8);
  }
  CHECK_THROWS_AS(acceleration_wave(conserved_from_primitive(State6{1, Vec3::Zero(), 1, 0.1}, g),
                                    kX, 1.0, g),
                  DomainError);
}

TEST_CASE("dynamic pressure gradient and production Jacobian") {
  std::mt19937_64 rng(31);
  const GasSpec g(7.0, 1.0, 1.0, 0.25);
  for (int k = 0; k < 10; ++k) {
    const Conserved6 u = conserved_from_primitive(test::random_state(rng, g), g);
    const Vec6 grad = dynamic_pressure_gradient(u, g);
    CHECK((grad - fd_pi_gradient(u, g)).norm() < 1e-7 * std::max(1.0, grad.norm()));
    const Mat6 P = production_jacobian(u, g);
    CHECK(P.topRows(5).norm() == 0.0);
    CHECK((P.row(5).transpose() + 3.0 / 0.25 * grad).norm() < 1e-12 * grad.norm());
  }
}

TEST_CASE("K-condition at equilibrium") {
  for (double D : {4.0, 5.0, 7.0, 12.0}) {
    const GasSpec g(D);
    const KConditionReport r = k_condition(conserved_from_primitive(State6{}, g), kX, g);
    CHECK(r.overall_pass);
    CHECK(r.weak_pass);
    CHECK_FALSE(r.any_marginal);
    CHECK(r.entries.size() == 6);
    CHECK(r.contact_null_dimension == 3);
    CHECK(r.contact_projection_residual < 1e-10);
  }
  const GasSpec mono(kMinDegreesOfFreedom);
  const KConditionReport m = k_condition(conserved_from_primitive(State6{}, mono), kX, mono);
  CHECK(m.any_marginal);
}

TEST_CASE("entropy is concave and its gradient is the main field") {
  const GasSpec g(5.0);
  for (double Z : {-0.5, 0.0, 0.3}) {
    const State6 s = state_from_ratio(1.0, Vec3(0.4, 0, 0), 1.0, Z, g);
    const ConvexityReport r = convexity_check(conserved_from_primitive(s, g), g);
    CHECK(r.gradient_pass);
    CHECK(r.concave);
    CHECK(r.max_hessian_eigenvalue < 0.0);
    CHECK_FALSE(r.reduced_confidence);
  }
  const State6 edge = state_from_ratio(1.0, Vec3::Zero(), 1.0, 0.99 * upper_ratio_bound(g), g);
  const ConvexityReport e = convexity_check(conserved_from_primitive(edge, g), g);
  CHECK(e.gradient_pass);
  CHECK((e.concave || e.reduced_confidence));
}

}  // TEST_SUITE
