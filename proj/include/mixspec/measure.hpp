#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace mixspec {

// One atom of a nonnegative measure on the order interval [0,1]: a point
// mass `weight` at differentiation order `s`.
struct MeasureAtom {
  double s = 0.0;
  double weight = 0.0;
};

enum class MeasurePart { plus, minus };

// Signed superposition measure mu = mu_plus - mu_minus on [0,1], stored as two
// finite atom lists (each sorted by s ascending, equal orders merged, zero
// weights dropped).  A measure is *solvable* once it carries a split order
// s_bar in (0,1] such that
//   (a) the plus part has strictly positive mass on [s_bar, 1], and
//   (b) the minus part has no atom at or above s_bar.
// Single-part measures produced by make_dirac/from_density carry s_bar = NaN
// until joined with combine(), which installs s_bar and validates.
struct SignedMeasure {
  std::vector<MeasureAtom> plus;
  std::vector<MeasureAtom> minus;
  double s_bar = std::numeric_limits<double>::quiet_NaN();
};

// Sort by s ascending, merge atoms with equal s, drop zero weights.
// Throws std::domain_error on weight < 0 or s outside [0,1].
std::vector<MeasureAtom> normalize_atoms(std::vector<MeasureAtom> atoms);

double total_mass(const std::vector<MeasureAtom>& atoms);
double mass_at_or_above(const std::vector<MeasureAtom>& atoms, double s0);

// Unit point mass at order s in the requested part; the other part stays
// empty.  Requires 0 <= s <= 1, and s < 1 for the minus part.
SignedMeasure make_dirac(double s, MeasurePart part);

// Discretize a continuous density on [a,b] (within [0,1]) into n_quad
// Gauss-Legendre atoms: atom orders are the quadrature nodes, atom weights
// density(node) * quadrature weight.  Negative density samples are rejected.
SignedMeasure from_density(const std::function<double(double)>& density,
                           double a, double b, int n_quad, MeasurePart part);

// Join a plus-only and a minus-only measure into one signed measure with the
// given split order, then validate the structural condition.  Preserves total
// mass of both parts exactly (atoms are concatenated, then normalized).
SignedMeasure combine(const SignedMeasure& plus_part,
                      const SignedMeasure& minus_part, double s_bar);

// Throws StructuralError unless the measure carries a split order in (0,1]
// and satisfies the structural condition stated above.
void validate_solvable(const SignedMeasure& m);

}  // namespace mixspec
