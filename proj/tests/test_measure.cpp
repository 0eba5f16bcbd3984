#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "mixspec/errors.hpp"
#include "mixspec/measure.hpp"

using namespace mixspec;

TEST_CASE("dirac measures carry a single unit atom in the requested part") {
  const SignedMeasure m = make_dirac(0.5, MeasurePart::plus);
  REQUIRE(m.plus.size() == 1);
  CHECK(m.minus.empty());
  CHECK(m.plus[0].s == doctest::Approx(0.5));
  CHECK(m.plus[0].weight == doctest::Approx(1.0));
  CHECK(std::isnan(m.s_bar));

  const SignedMeasure neg = make_dirac(0.0, MeasurePart::minus);
  CHECK(neg.plus.empty());
  REQUIRE(neg.minus.size() == 1);
  CHECK(neg.minus[0].s == doctest::Approx(0.0));
}

TEST_CASE("dirac validation: order outside [0,1] and negative part at 1") {
  CHECK_THROWS_AS(make_dirac(-0.1, MeasurePart::plus), std::domain_error);
  CHECK_THROWS_AS(make_dirac(1.2, MeasurePart::plus), std::domain_error);
  CHECK_THROWS_AS(make_dirac(1.0, MeasurePart::minus), std::domain_error);
  CHECK_NOTHROW(make_dirac(1.0, MeasurePart::plus));
  CHECK_NOTHROW(make_dirac(0.0, MeasurePart::minus));
}

TEST_CASE("atom normalization sorts, merges duplicates, drops zero weights") {
  const auto atoms = normalize_atoms(
      {{0.7, 1.0}, {0.2, 0.5}, {0.7, 2.0}, {0.4, 0.0}});
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].s == doctest::Approx(0.2));
  CHECK(atoms[0].weight == doctest::Approx(0.5));
  CHECK(atoms[1].s == doctest::Approx(0.7));
  CHECK(atoms[1].weight == doctest::Approx(3.0));
}

TEST_CASE("atom normalization rejects invalid entries") {
  CHECK_THROWS_AS(normalize_atoms({{1.5, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(normalize_atoms({{-0.5, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(normalize_atoms({{0.5, -1.0}}), std::domain_error);
}

TEST_CASE("constant density discretization reproduces the support mass") {
  // density 1 on [0.25, 0.75]: total mass 0.5 regardless of node count
  const SignedMeasure m =
      from_density([](double) { return 1.0; }, 0.25, 0.75, 6, MeasurePart::plus);
  CHECK(m.minus.empty());
  CHECK(total_mass(m.plus) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("linear density 2s on [0,1] has unit mass with few nodes") {
  // Gauss atoms are exact for polynomial densities of degree <= 2n-1
  const SignedMeasure m = from_density([](double s) { return 2.0 * s; }, 0.0,
                                       1.0, 4, MeasurePart::minus);
  CHECK(m.plus.empty());
  CHECK(total_mass(m.minus) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density discretization rejects bad supports and negative values") {
  CHECK_THROWS_AS(from_density([](double) { return 1.0; }, -0.1, 0.5, 4,
                               MeasurePart::plus),
                  std::domain_error);
  CHECK_THROWS_AS(from_density([](double) { return 1.0; }, 0.5, 1.1, 4,
                               MeasurePart::plus),
                  std::domain_error);
  CHECK_THROWS_AS(from_density([](double s) { return s - 0.5; }, 0.0, 1.0, 8,
                               MeasurePart::plus),
                  std::domain_error);
}

TEST_CASE("mass_at_or_above splits atom lists at the threshold") {
  const std::vector<MeasureAtom> atoms = {{0.2, 1.0}, {0.5, 2.0}, {0.9, 3.0}};
  CHECK(mass_at_or_above(atoms, 0.5) == doctest::Approx(5.0));
  CHECK(mass_at_or_above(atoms, 0.51) == doctest::Approx(3.0));
  CHECK(mass_at_or_above(atoms, 0.95) == doctest::Approx(0.0));
}

TEST_CASE("combine installs the split order and validates solvability") {
  const SignedMeasure m =
      combine(make_dirac(1.0, MeasurePart::plus),
              make_dirac(0.3, MeasurePart::minus), 1.0);
  CHECK(m.s_bar == doctest::Approx(1.0));
  REQUIRE(m.plus.size() == 1);
  REQUIRE(m.minus.size() == 1);
  CHECK(m.plus[0].s == doctest::Approx(1.0));
  CHECK(m.minus[0].s == doctest::Approx(0.3));
}

TEST_CASE("combine rejects misplaced parts") {
  const SignedMeasure p = make_dirac(0.5, MeasurePart::plus);
  const SignedMeasure n = make_dirac(0.3, MeasurePart::minus);
  CHECK_THROWS_AS(combine(n, n, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(combine(p, p, 0.5), std::invalid_argument);
}

TEST_CASE("combine preserves both total masses") {
  SignedMeasure plus_part;
  plus_part.plus = normalize_atoms({{0.9, 0.25}, {1.0, 1.75}});
  SignedMeasure minus_part;
  minus_part.minus = normalize_atoms({{0.1, 0.5}, {0.4, 0.5}});
  const SignedMeasure m = combine(plus_part, minus_part, 0.9);
  CHECK(total_mass(m.plus) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(total_mass(m.minus) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solvability: positive mass at the split order and above") {
  SignedMeasure m;
  m.plus = normalize_atoms({{0.4, 1.0}});
  m.minus = normalize_atoms({{0.2, 1.0}});
  m.s_bar = 0.5;
  // no positive mass at or above 0.5
  CHECK_THROWS_AS(validate_solvable(m), StructuralError);
  m.s_bar = 0.4;
  CHECK_NOTHROW(validate_solvable(m));
}

TEST_CASE("solvability: negative mass at or above the split order is fatal") {
  SignedMeasure m;
  m.plus = normalize_atoms({{1.0, 1.0}});
  m.minus = normalize_atoms({{0.6, 1.0}});
  m.s_bar = 0.6;  // negative atom exactly at the split order
  CHECK_THROWS_AS(validate_solvable(m), StructuralError);
  m.s_bar = 0.7;
  CHECK_NOTHROW(validate_solvable(m));
}

TEST_CASE("solvability: split order must lie in (0,1]") {
  SignedMeasure m;
  m.plus = normalize_atoms({{1.0, 1.0}});
  m.minus = normalize_atoms({{0.0, 1.0}});
  m.s_bar = 0.0;
  CHECK_THROWS_AS(validate_solvable(m), StructuralError);
  m.s_bar = 1.5;
  CHECK_THROWS_AS(validate_solvable(m), StructuralError);
  m.s_bar = 1.0;
  CHECK_NOTHROW(validate_solvable(m));
}
