#include <doctest.h>

#include <cmath>

#include "et6/quadrature.hpp"
#include "support.hpp"

using namespace et6;
using et6::test::rel;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Hermite integrates even powers exactly") {
  for (int n : {8, 16, 64, 128}) {
    const GaussRule r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == static_cast<size_t>(n));
    for (int k = 0; k < std::min(n, 12); ++k) {
      std::vector<double> even, odd;
      for (size_t i = 0; i < r.nodes.size(); ++i) {
        even.push_back(r.weights[i] * std::pow(r.nodes[i], 2 * k));
        odd.push_back(r.weights[i] * std::pow(r.nodes[i], 2 * k + 1));
      }
      CHECK(rel(pairwise_sum(even), std::tgamma(k + 0.5)) < 1e-12);
      CHECK(std::abs(pairwise_sum(odd)) < 1e-12 * std::tgamma(k + 1.0));
    }
  }
}

TEST_CASE("generalized Gauss-Laguerre integrates s^(alpha+k) exactly") {
  for (double alpha : {-0.5 + 5e-7, -0.25, 0.0, 0.5, 1.0, 3.5}) {
    for (int n : {8, 32, 128}) {
      const GaussRule r = gauss_laguerre(n, alpha);
      for (int k = 0; k < 10; ++k) {
        std::vector<double> t;
        for (size_t i = 0; i < r.nodes.size(); ++i) t.push_back(r.weights[i] * std::pow(r.nodes[i], k));
        CHECK(rel(pairwise_sum(t), std::tgamma(alpha + k + 1.0)) < 1e-11);
      }
    }
  }
}

TEST_CASE("rules have positive weights and ordered nodes") {
  const GaussRule h = gauss_hermite(64);
  const GaussRule l = gauss_laguerre(64, -0.4);
  for (const GaussRule* r : {&h, &l}) {
    for (size_t i = 0; i < r->nodes.size(); ++i) {
      CHECK(r->weights[i] > 0.0);
      if (i > 0) CHECK(r->nodes[i] > r->nodes[i - 1]);
    }
  }
  CHECK(l.nodes.front() > 0.0);
}

TEST_CASE("pairwise sum is order-stable") {
  std::vector<double> t(1001);
  for (size_t i = 0; i < t.size(); ++i) t[i] = 1.0 / (1.0 + i);
  const double a = pairwise_sum(t);
  CHECK(a == pairwise_sum(t));
  double naive = 0.0;
  for (double x : t) naive += x;
  CHECK(rel(a, naive) < 1e-14);
  CHECK(pairwise_sum({}) == 0.0);
}

}  // TEST_SUITE
