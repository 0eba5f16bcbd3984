#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "mixspec/eigensolver.hpp"
#include "mixspec/errors.hpp"
#include "mixspec/probes.hpp"

using namespace mixspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

SignedMeasure classical_measure() {
  return combine(make_dirac(1.0, MeasurePart::plus),
                 make_dirac(0.0, MeasurePart::minus), 1.0);
}

SignedMeasure plus1_minus(double s_minus) {
  return combine(make_dirac(1.0, MeasurePart::plus),
                 make_dirac(s_minus, MeasurePart::minus), 1.0);
}

}  // namespace

TEST_CASE("classical pencil reproduces the lattice Dirichlet eigenvalues") {
  const double h = 1.0 / 64;
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), h);
  const Pencil p = build_pencil(g, classical_measure());
  const EigenResult r = smallest_eigenpairs(p, 2);

  auto exact = [&](int m) { return 2.0 * (1.0 - std::cos(m * kPi * h)) / (h * h); };
  CHECK(r.lambdas[0] == doctest::Approx(exact(1)).epsilon(1e-10));
  CHECK(r.lambdas[1] == doctest::Approx(exact(2)).epsilon(1e-10));
  CHECK(r.gap == doctest::Approx((exact(2) - exact(1)) / exact(1)).epsilon(1e-9));
  CHECK(r.lambdas[0] == doctest::Approx(kPi * kPi).epsilon(1e-3));
  CHECK(r.residuals[0] <= 1e-8);
  CHECK(r.residuals[1] <= 1e-8);
}

TEST_CASE("three-node classical problem has the frozen closed-form eigenvalue") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 0.25);
  const EigenResult r = smallest_eigenpairs(build_pencil(g, classical_measure()), 1);
  // (2 - sqrt(2)) / h^2 for the 3x3 second-difference matrix
  CHECK(r.lambdas[0] == doctest::Approx(9.372583002030478).epsilon(1e-14));
}

TEST_CASE("eigenvectors carry unit discrete mass and a positive peak") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 1.0 / 32);
  const Pencil p = build_pencil(g, classical_measure());
  const EigenResult r = smallest_eigenpairs(p, 3);
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXd v = r.vectors.col(j);
    CHECK(g.h * v.dot(p.a_minus.a * v) == doctest::Approx(1.0).epsilon(1e-12));
    double peak = 0.0;
    for (int i = 0; i < g.n(); ++i)
      if (std::abs(v(i)) > std::abs(peak)) peak = v(i);
    CHECK(peak > 0.0);
  }
  // ground state of a connected problem is one-signed
  CHECK(r.vectors.col(0).minCoeff() > 0.0);
  CHECK(r.sign_profile[0].first == doctest::Approx(r.vectors.col(0).minCoeff()));
  CHECK(r.sign_profile[0].second == doctest::Approx(r.vectors.col(0).maxCoeff()));
}

TEST_CASE("fractional pencil solves cleanly and stays positive") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 1.0 / 64);
  const Pencil p = build_pencil(g, plus1_minus(0.5));
  const EigenResult r = smallest_eigenpairs(p, 2);
  CHECK(r.lambdas[0] > 0.0);
  CHECK(r.lambdas[1] > r.lambdas[0]);
  CHECK(r.residuals[0] <= 1e-8);
  CHECK(sign_classification(r.vectors.col(0)) == SignClass::positive);
}

TEST_CASE("scaling the minus part scales eigenvalues inversely") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 1.0 / 32);
  const EigenResult base =
      smallest_eigenpairs(build_pencil(g, plus1_minus(0.3)), 1);
  SignedMeasure doubled = plus1_minus(0.3);
  doubled.minus[0].weight = 2.0;
  const EigenResult scaled = smallest_eigenpairs(build_pencil(g, doubled), 1);
  CHECK(scaled.lambdas[0] ==
        doctest::Approx(base.lambdas[0] / 2.0).epsilon(1e-12));
}

TEST_CASE("with a mass minus part the union eigenvalue is the component minimum") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}, {2.0, 4.0}}), 1.0 / 64);
  const EigenResult whole =
      smallest_eigenpairs(build_pencil(g, classical_measure()), 1);
  double lam_min = std::numeric_limits<double>::infinity();
  for (int c = 0; c < g.component_count(); ++c) {
    const Grid part = component_restriction(g, c);
    const EigenResult r =
        smallest_eigenpairs(build_pencil(part, classical_measure()), 1);
    lam_min = std::min(lam_min, r.lambdas[0]);
  }
  CHECK(std::abs(whole.lambdas[0] - lam_min) <= 1e-12 * lam_min);
}

TEST_CASE("rayleigh quotient equals the eigenvalue on the minimizer") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 1.0 / 32);
  const Pencil p = build_pencil(g, plus1_minus(0.4));
  const EigenResult r = smallest_eigenpairs(p, 1);
  CHECK(rayleigh_quotient(p, r.vectors.col(0)) ==
        doctest::Approx(r.lambdas[0]).epsilon(1e-12));
}

TEST_CASE("rayleigh quotient is minimized by the first eigenvalue") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 1.0 / 32);
  const Pencil p = build_pencil(g, plus1_minus(0.4));
  const EigenResult r = smallest_eigenpairs(p, 1);
  DetRng rng(11);
  for (int trial = 0; trial < 16; ++trial) {
    Eigen::VectorXd u(g.n());
    for (int i = 0; i < g.n(); ++i) u(i) = rng.normal();
    CHECK(rayleigh_quotient(p, u) >= r.lambdas[0] * (1.0 - 1e-12));
    // the quotient is scale-invariant
    CHECK(rayleigh_quotient(p, Eigen::VectorXd(2.0 * u)) ==
          doctest::Approx(rayleigh_quotient(p, u)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(rayleigh_quotient(p, Eigen::VectorXd::Zero(g.n())),
                  std::domain_error);
}

TEST_CASE("solver rejects bad eigenpair counts") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 0.25);
  const Pencil p = build_pencil(g, classical_measure());
  CHECK_THROWS_AS(smallest_eigenpairs(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(smallest_eigenpairs(p, g.n() + 1), std::invalid_argument);
  CHECK_THROWS_AS(smallest_eigenpairs(p, 1, 0.0), std::invalid_argument);
}

TEST_CASE("pencil construction demands a solvable measure with a minus part") {
  const Grid g = build_grid(make_domain({{0.0, 1.0}}), 0.25);
  CHECK_THROWS_AS(build_pencil(g, make_dirac(1.0, MeasurePart::plus)),
                  StructuralError);
  SignedMeasure no_high_mass;
  no_high_mass.plus = normalize_atoms({{0.2, 1.0}});
  no_high_mass.minus = normalize_atoms({{0.1, 1.0}});
  no_high_mass.s_bar = 0.5;
  CHECK_THROWS_AS(build_pencil(g, no_high_mass), StructuralError);
}

TEST_CASE("sign classification distinguishes the three shapes") {
  Eigen::VectorXd pos(4);
  pos << 0.5, 1.0, 0.8, 0.2;
  CHECK(sign_classification(pos) == SignClass::positive);
  CHECK(sign_classification(Eigen::VectorXd(-pos)) == SignClass::negative);

  Eigen::VectorXd mixed(4);
  mixed << 0.5, 1.0, -0.6, 0.2;
  CHECK(sign_classification(mixed) == SignClass::sign_changing);

  // dips below zero smaller than the threshold are ignored
  Eigen::VectorXd dip(4);
  dip << 0.5, 1.0, -1e-9, 0.2;
  CHECK(sign_classification(dip, 1e-6) == SignClass::positive);
  CHECK(sign_classification(dip, 1e-12) == SignClass::sign_changing);

  CHECK(sign_classification(Eigen::VectorXd::Zero(3)) == SignClass::degenerate);
  CHECK_THROWS_AS(sign_classification(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("simplicity diagnostic compares the relative gap to the threshold") {
  EigenResult r;
  r.lambdas = {1.0, 1.5};
  r.gap = 0.5;
  CHECK(simplicity_diagnostic(r, 1e-3) == Simplicity::simple);
  r.gap = 1e-5;
  CHECK(simplicity_diagnostic(r, 1e-3) == Simplicity::near_degenerate);
  r.lambdas = {1.0};
  CHECK_THROWS_AS(simplicity_diagnostic(r, 1e-3), std::invalid_argument);
}
