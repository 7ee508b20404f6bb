#pragma once

#include <vector>

namespace et6 {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule for the weight exp(-t^2) on the real line.
GaussRule gauss_hermite(int n);

/// n-point generalized Gauss-Laguerre rule for the weight s^alpha exp(-s)
/// on [0, inf), alpha > -1.
GaussRule gauss_laguerre(int n, double alpha);

/// Sum in fixed pairwise order, independent of platform reductions.
double pairwise_sum(const std::vector<double>& terms);

}  // namespace et6
