#pragma once

#include <cmath>
#include <random>

#include "et6/gas_model.hpp"

namespace et6::test {

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Admissible state drawn from a fixed-seed generator; Z stays within
// `fraction` of the window.
inline State6 random_state(std::mt19937_64& rng, const GasSpec& spec,
                           double fraction = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double ub = upper_ratio_bound(spec);
  State6 s;
  s.rho = 0.2 + 3.0 * u(rng);
  s.v = Vec3(4 * u(rng) - 2, 4 * u(rng) - 2, 4 * u(rng) - 2);
  s.T = 0.2 + 3.0 * u(rng);
  const double Z = -fraction + (fraction * ub + fraction) * u(rng);
  s.Pi = Z * spec.R() * s.rho * s.T;
  return s;
}

}  // namespace et6::test
