#include "et6/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace et6 {
namespace {

// Three-term recurrence of the orthonormal family:
//   x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
struct Recurrence {
  std::vector<double> a;  // a_0 .. a_{n-1}
  std::vector<double> b;  // b_0 (unused) .. b_n
  double mu0;             // total mass of the weight
};

struct Evaluation {
  double p_n;        // p_n(x), scaled
  double dp_n;       // p_n'(x), same scale
  double sum_sq;     // sum_{k<n} p_k(x)^2, scaled by scale_sq
  int rescalings;    // number of 1e-150 rescalings applied to p
};

constexpr double kBig = 1e150;
constexpr double kShrink = 1e-150;

Evaluation evaluate(const Recurrence& r, int n, double x) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(r.mu0);
  double dp_prev = 0.0;
  double dp = 0.0;
  double sum_sq = 0.0;
  int rescalings = 0;
  for (int k = 0; k < n; ++k) {
    sum_sq += p * p;
    const double p_next = ((x - r.a[k]) * p - r.b[k] * p_prev) / r.b[k + 1];
    const double dp_next =
        ((x - r.a[k]) * dp + p - r.b[k] * dp_prev) / r.b[k + 1];
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    if (std::abs(p) > kBig || std::abs(dp) > kBig) {
      p *= kShrink;
      p_prev *= kShrink;
      dp *= kShrink;
      dp_prev *= kShrink;
      sum_sq *= kShrink * kShrink;
      ++rescalings;
    }
  }
  return {p, dp, sum_sq, rescalings};
}

GaussRule build(const Recurrence& r, int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = r.a[k];
  for (int k = 1; k < n; ++k) sub[k - 1] = r.b[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Jacobi matrix eigensolve failed");
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      const Evaluation e = evaluate(r, n, x);
      if (e.dp_n == 0.0) break;
      const double step = e.p_n / e.dp_n;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const Evaluation e = evaluate(r, n, x);
    double w = 1.0 / e.sum_sq;
    for (int s = 0; s < e.rescalings; ++s) w *= kShrink * kShrink;
    rule.nodes[i] = x;
    rule.weights[i] = w;
  }
  return rule;
}

void check_order(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
}

}  // namespace

GaussRule gauss_hermite(int n) {
  check_order(n);
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.resize(n + 1);
  for (int k = 0; k <= n; ++k) r.b[k] = std::sqrt(0.5 * k);
  r.mu0 = std::sqrt(std::numbers::pi);
  return build(r, n);
}

GaussRule gauss_laguerre(int n, double alpha) {
  check_order(n);
  if (!(alpha > -1.0)) {
    throw std::invalid_argument("Laguerre exponent alpha must be > -1");
  }
  Recurrence r;
  r.a.resize(n);
  r.b.resize(n + 1);
  for (int k = 0; k < n; ++k) r.a[k] = 2.0 * k + alpha + 1.0;
  r.b[0] = 0.0;
  for (int k = 1; k <= n; ++k) r.b[k] = std::sqrt(k * (k + alpha));
  r.mu0 = std::tgamma(alpha + 1.0);
  return build(r, n);
}

double pairwise_sum(const std::vector<double>& terms) {
  // Iterative bottom-up pairing keeps the order fixed for a given length.
  if (terms.empty()) return 0.0;
  std::vector<double> level = terms;
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t j = 2 * i;
      next[i] = j + 1 < level.size() ? level[j] + level[j + 1] : level[j];
    }
    level.swap(next);
  }
  return level.front();
}

}  // namespace et6
