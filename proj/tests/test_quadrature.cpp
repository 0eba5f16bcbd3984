#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "mixspec/quadrature.hpp"

using mixspec::gauss_legendre;

namespace {

// integral of x^p over [a,b]
double monomial_integral(int p, double a, double b) {
  return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

double apply(const mixspec::QuadRule& rule, int p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::pow(rule.nodes[i], p);
  return acc;
}

}  // namespace

TEST_CASE("gauss rule integrates polynomials up to degree 2n-1 exactly") {
  for (int n = 1; n <= 8; ++n) {
    const auto rule = gauss_legendre(n, -0.3, 1.7);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      const double exact = monomial_integral(p, -0.3, 1.7);
      CHECK(apply(rule, p) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss rule has positive weights summing to the interval length") {
  const auto rule = gauss_legendre(12, 2.0, 5.0);
  double mass = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    mass += w;
  }
  CHECK(mass == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("gauss nodes stay inside the interval and increase") {
  const auto rule = gauss_legendre(9, -1.0, 1.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 1.0);
    if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("single-point rule is the midpoint rule") {
  const auto rule = gauss_legendre(1, 0.0, 4.0);
  REQUIRE(rule.nodes.size() == 1);
  CHECK(rule.nodes[0] == doctest::Approx(2.0));
  CHECK(rule.weights[0] == doctest::Approx(4.0));
}

TEST_CASE("gauss rule rejects bad arguments") {
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 2.0, 1.0), std::invalid_argument);
}
