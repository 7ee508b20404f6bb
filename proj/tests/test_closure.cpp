#include <doctest.h>

#include <numbers>

#include "et6/closure.hpp"
#include "et6/eigenstructure.hpp"
#include "support.hpp"

using namespace et6;
using et6::test::rel;

namespace {
const double kOmegaEq = std::pow(2.0 * std::numbers::pi, -1.5);
// 1 + ln (2 pi)^(-3/2), 30-digit reference.
const double kGOverT = -1.7568155996140182253;
}

TEST_SUITE("closure") {

TEST_CASE("multipliers of reference states") {
  const GasSpec g(5.0);
  const Multipliers eq = multipliers_from_state(State6{}, g);
  CHECK(eq.xi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eq.zeta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rel(eq.Omega, kOmegaEq) < 1e-14);

  const Multipliers m = multipliers_from_state(State6{1.0, Vec3::Zero(), 1.0, 0.2}, g);
  CHECK(rel(m.xi, 0.5 / 1.2) < 1e-15);
  CHECK(rel(m.zeta, 1.0 / 0.7) < 1e-15);
}

TEST_CASE("zeta diverges at the upper bound and trips the overflow guard") {
  const GasSpec g(5.0);
  const double ub = upper_ratio_bound(g);
  double prev = 0.0;
  for (double gap : {1e-1, 1e-3, 1e-6, 1e-9}) {
    const Multipliers m = multipliers_from_state(State6{1.0, Vec3::Zero(), 1.0, ub - gap}, g);
    CHECK(m.zeta > prev);
    prev = m.zeta;
  }
  // D close to 3: the window is ~3e-7 wide and log zeta stays finite.
  const GasSpec mono(kMinDegreesOfFreedom);
  CHECK_NOTHROW(multipliers_from_state(State6{}, mono));
  // A very cold state pushes log Omega past the guard.
  CHECK_THROWS_AS(multipliers_from_state(State6{1.0, Vec3::Zero(), 1e-250, 0.0}, g), RangeError);
  CHECK_THROWS_AS(multipliers_from_state(State6{1.0, Vec3::Zero(), 1.0, ub}, g), InadmissibleState);
}

TEST_CASE("multipliers invert back to the rest-frame moments") {
  const GasSpec g(5.0);
  const RestFrameMoments a = state_from_multipliers(multipliers_from_state(State6{}, g), g);
  CHECK(rel(a.rho, 1.0) < 1e-14);
  CHECK(rel(a.p_plus_Pi, 1.0) < 1e-14);
  CHECK(rel(a.rho_eps, 2.5) < 1e-14);
  const RestFrameMoments b =
      state_from_multipliers(multipliers_from_state(State6{1.0, Vec3::Zero(), 1.0, 0.2}, g), g);
  CHECK(rel(b.p_plus_Pi, 1.2) < 1e-14);
  CHECK(rel(b.rho_eps, 2.5) < 1e-14);

  // 100-point sweep across the window for several D.
  double worst = 0.0;
  for (double D : {3.5, 4.0, 5.0, 9.0}) {
    const GasSpec gd(D, 2.0, 0.5);
    const double ub = upper_ratio_bound(gd);
    for (int k = 0; k < 100; ++k) {
      const double Z = -0.99 + (0.99 * ub + 0.99) * k / 99.0;
      const State6 s = state_from_ratio(1.7, Vec3::Zero(), 0.6, Z, gd);
      const RestFrameMoments r = state_from_multipliers(multipliers_from_state(s, gd), gd);
      const double p = pressure(s, gd);
      worst = std::max({worst, rel(r.rho, s.rho), rel(r.p_plus_Pi, p + s.Pi),
                        rel(r.rho_eps, 0.5 * D * p)});
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("distribution value and equilibrium reduction") {
  const GasSpec g(5.0);
  CHECK(rel(distribution_value(Vec3::Zero(), 0.0, State6{}, g), kOmegaEq) < 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (double D : {3.3, 4.0, 5.0, 8.0}) {
    const GasSpec gd(D, 1.5, 0.8);
    const State6 s{0.7, Vec3(0.3, 0.1, -0.2), 1.4, 0.0};
    for (int k = 0; k < 1000; ++k) {
      const Vec3 C(8 * u(rng) - 4, 8 * u(rng) - 4, 8 * u(rng) - 4);
      const double I = 10 * u(rng);
      worst = std::max(worst, rel(distribution_value(C, I, s, gd), maxwellian_value(C, I, s, gd)));
    }
  }
  CHECK(worst < 1e-12);

  // Positivity away from equilibrium.
  const State6 s{1.0, Vec3::Zero(), 1.0, 0.6};
  for (int k = 0; k < 200; ++k) {
    CHECK(distribution_value(Vec3(10 * u(rng), 0, 0), 20 * u(rng), s, g) > 0.0);
  }
}

TEST_CASE("closed fluxes") {
  const GasSpec g(5.0);
  const FluxSet rest = closed_fluxes(State6{1.0, Vec3::Zero(), 1.0, 0.3}, g);
  CHECK((rest.F_ik - 1.3 * Mat3::Identity()).norm() < 1e-15);
  CHECK(rest.F_llk.norm() == 0.0);
  CHECK(rest.G_llk.norm() == 0.0);

  const FluxSet moving = closed_fluxes(State6{1.0, Vec3(1, 0, 0), 1.0, 0.0}, g);
  CHECK(moving.F_ik(0, 0) == doctest::Approx(2.0));
  CHECK(moving.F_llk.x() == doctest::Approx(6.0));
  CHECK(moving.G_llk.x() == doctest::Approx(8.0));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const FluxSet f = closed_fluxes(test::random_state(rng, g), g);
    CHECK((f.F_ik - f.F_ik.transpose()).norm() <= 1e-15 * f.F_ik.norm());
  }
}

TEST_CASE("BGK production") {
  const GasSpec g(5.0, 1.0, 1.0, 0.1);
  CHECK(production_bgk(State6{}, g) == 0.0);
  CHECK(production_bgk(State6{1.0, Vec3::Zero(), 1.0, 0.3}, g) == doctest::Approx(-9.0));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const State6 s = test::random_state(rng, g);
    const double P = production_bgk(s, g);
    CHECK(P * s.Pi <= 0.0);
    CHECK((P == 0.0) == (s.Pi == 0.0));
  }
}

TEST_CASE("entropy: equilibrium values and decomposition") {
  const GasSpec g(5.0);
  const EntropyParts e = entropy_parts(State6{}, g);
  CHECK(rel(e.h, 2.5 - std::log(kOmegaEq)) < 1e-14);
  CHECK(rel(e.h, 5.2568155996140182) < 1e-14);
  CHECK(e.k == 0.0);
  CHECK(rel(e.g_over_T, kGOverT) < 1e-14);
  // g/T = eps + p/rho - T s with s = h_E / rho.
  CHECK(rel(e.g_over_T, 2.5 + 1.0 - e.h_eq) < 1e-14);

  const State6 s{1.0, Vec3::Zero(), 1.0, 0.2};
  const EntropyParts n = entropy_parts(s, g);
  CHECK(n.k == doctest::Approx(-0.0831926087478004).epsilon(1e-12));
  CHECK(rel(n.h, n.h_eq + s.rho * n.k) < 1e-12);
  // k from the amplitude ratio: -R ln(Omega / Omega_E).
  const double k_alt = -std::log(multipliers_from_state(s, g).Omega / kOmegaEq);
  CHECK(rel(n.k, k_alt) < 1e-12);
}

TEST_CASE("k(Z) is negative off equilibrium and concave at zero") {
  for (double D : {kMinDegreesOfFreedom, 3.5, 5.0, 12.0}) {
    const GasSpec g(D);
    CHECK(nonequilibrium_entropy(0.0, g) == 0.0);
    const double ub = upper_ratio_bound(g);
    for (int k = 1; k < 200; ++k) {
      const double Z = -1.0 + (ub + 1.0) * k / 200.0;
      if (Z == 0.0) continue;
      CHECK(nonequilibrium_entropy(Z, g) < 0.0);
    }
    const double dz = 1e-3 * ub;
    CHECK(nonequilibrium_entropy(dz, g) - 2 * nonequilibrium_entropy(0.0, g) +
              nonequilibrium_entropy(-dz, g) < 0.0);
  }
}

TEST_CASE("k(Z) keeps its sign and quadratic behaviour at tiny Z") {
  // Leading order: k = -(3/4) R Z^2 D / (D - 3).
  for (double D : {4.0, 5.0, 12.0}) {
    const GasSpec g(D, 1.0, 2.0);
    for (double Z : {1e-16, -1e-12, 1e-9, -1e-6}) {
      const double lead = -0.75 * g.R() * Z * Z * D / (D - 3.0);
      CHECK(rel(nonequilibrium_entropy(Z, g), lead) < 1e-5);
    }
  }
}

TEST_CASE("main field at equilibrium") {
  const GasSpec g(5.0);
  const MainField w = main_field(State6{}, g);
  CHECK(rel(w.lambda, -kGOverT) < 1e-14);
  CHECK(w.lambda_i.norm() == 0.0);
  CHECK(w.lambda_ll == 0.0);
  CHECK(w.mu_ll == doctest::Approx(0.5));

  const State6 moving{1.3, Vec3(0.4, -0.2, 0.7), 0.9, 0.0};
  const MainField wm = main_field(moving, g);
  CHECK((wm.lambda_i + moving.v / moving.T).norm() < 1e-15);
  CHECK(wm.lambda_ll == 0.0);
  CHECK(rel(wm.mu_ll, 0.5 / moving.T) < 1e-15);
}

TEST_CASE("main field transforms under a Galilean boost") {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (double D : {3.5, 5.0, 9.0}) {
    const GasSpec g(D, 1.2, 0.9);
    for (int k = 0; k < 50; ++k) {
      State6 s = test::random_state(rng, g);
      State6 rest = s;
      rest.v = Vec3::Zero();
      const Vec6 direct = main_field(s, g).to_vector();
      const Vec6 boosted = boost_main_field(main_field(rest, g), s.v).to_vector();
      worst = std::max(worst, (direct - boosted).cwiseAbs().maxCoeff() / direct.cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("entropy gradient equals the main field (finite differences, step sweep)") {
  std::mt19937_64 rng(17);
  for (double D : {3.5, 5.0, 7.0}) {
    const GasSpec g(D, 2.0, 0.6);
    for (int k = 0; k < 10; ++k) {
      const State6 s = test::random_state(rng, g, 0.8);
      const Conserved6 u = conserved_from_primitive(s, g);
      const Vec6 w = main_field(s, g).to_vector();
      for (double step : {1e-2, 3e-3, 1e-3}) {
        const Vec6 fd = entropy_gradient_fd(u, g, step);
        CHECK((fd - w).cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff() < 1e-6);
      }
    }
  }
}

}  // TEST_SUITE
