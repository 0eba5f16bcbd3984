#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mixspec/fractional_op.hpp"
#include "mixspec/grid.hpp"
#include "mixspec/measure.hpp"

namespace mixspec {

// Generalized eigenvalue pencil  A_plus v = lambda A_minus v  built from a
// solvable signed measure: A_plus superposes the plus atoms, A_minus the
// minus atoms.  Both matrices are symmetric positive definite on a nonempty
// grid, so the spectrum is real and positive.
struct Pencil {
  Grid grid;
  SignedMeasure measure;
  OperatorMatrix a_plus;
  OperatorMatrix a_minus;
};

// Assembles both sides and probes definiteness with a Cholesky factorization
// of each.  Throws StructuralError when the measure is not solvable or has an
// empty minus part, NumericalError when a probe fails.
Pencil build_pencil(const Grid& grid, const SignedMeasure& measure);

// The k smallest eigenpairs, eigenvalues ascending.  Column j of `vectors`
// holds v_j normalized to h * v^T A_minus v = 1 with the global sign chosen
// so the largest-magnitude entry is positive (ties: lowest node index).
struct EigenResult {
  std::vector<double> lambdas;
  Eigen::MatrixXd vectors;                             // n x k
  std::vector<double> residuals;                       // ||A+ v - l A- v|| / ||A+ v||
  double gap = 0.0;                                    // (l_2-l_1)/l_1, NaN when k < 2
  std::vector<std::pair<double, double>> sign_profile; // per vector (min, max)
};

// Dense symmetric-definite reduction (Cholesky of A_minus, then a dense
// symmetric eigendecomposition of the reduced matrix) — deterministic and
// branch-free, no iterative restarts.  Throws std::invalid_argument when
// k < 1 or k > n, NumericalError when the factorization fails, a residual
// exceeds `tol`, or the smallest eigenvalue is not strictly positive.
EigenResult smallest_eigenpairs(const Pencil& pencil, int k, double tol = 1e-8);

// (u^T A_plus u) / (u^T A_minus u); rejects the zero vector.
double rayleigh_quotient(const Pencil& pencil, const Eigen::VectorXd& u);

enum class SignClass { positive, negative, sign_changing, degenerate };

// Classifies a vector relative to rel_threshold * ||v||_inf after flipping
// the global sign to the canonical one (largest-magnitude entry positive).
// `positive`/`negative` report the vector's original orientation when the
// canonical form is one-signed up to the threshold.
SignClass sign_classification(const Eigen::VectorXd& v,
                              double rel_threshold = 1e-6);

enum class Simplicity { simple, near_degenerate };

// `simple` iff the relative gap (l_2-l_1)/l_1 exceeds gap_threshold.
// Requires a result with at least two eigenvalues.
Simplicity simplicity_diagnostic(const EigenResult& result,
                                 double gap_threshold = 1e-3);

}  // namespace mixspec
