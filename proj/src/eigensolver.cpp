#include "mixspec/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mixspec/errors.hpp"

namespace mixspec {

namespace {

// Index of the largest-magnitude entry; ties resolved to the lowest index.
Eigen::Index peak_index(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  double mag = std::abs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > mag) {
      mag = m;
      best = i;
    }
  }
  return best;
}

void probe_definite(const Eigen::MatrixXd& m, const char* label) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(label) +
                         " failed the positive-definiteness probe (Cholesky)");
}

}  // namespace

Pencil build_pencil(const Grid& grid, const SignedMeasure& measure) {
  validate_solvable(measure);
  if (measure.minus.empty())
    throw StructuralError("pencil needs a nonempty minus part");
  if (grid.n() == 0) throw std::domain_error("pencil needs a nonempty grid");

  Pencil pencil;
  pencil.grid = grid;
  pencil.measure = measure;
  pencil.a_plus = assemble_superposed(grid, measure.plus);
  pencil.a_minus = assemble_superposed(grid, measure.minus);
  probe_definite(pencil.a_plus.a, "A_plus");
  probe_definite(pencil.a_minus.a, "A_minus");
  return pencil;
}

EigenResult smallest_eigenpairs(const Pencil& pencil, int k, double tol) {
  const int n = pencil.grid.n();
  if (k < 1 || k > n)
    throw std::invalid_argument("smallest_eigenpairs: k=" + std::to_string(k) +
                                " outside [1," + std::to_string(n) + "]");
  if (!(tol > 0.0))
    throw std::invalid_argument("smallest_eigenpairs: tolerance must be positive");

  // Cholesky A_minus = L L^T, dense symmetric eigendecomposition of
  // L^{-1} A_plus L^{-T}, eigenvectors transformed back.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      pencil.a_plus.a, pencil.a_minus.a,
      Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw NumericalError("generalized eigensolve did not converge");

  const double h = pencil.grid.h;
  EigenResult result;
  result.lambdas.resize(static_cast<std::size_t>(k));
  result.vectors.resize(n, k);
  result.residuals.resize(static_cast<std::size_t>(k));
  result.sign_profile.resize(static_cast<std::size_t>(k));

  for (int j = 0; j < k; ++j) {
    const double lambda = solver.eigenvalues()(j);
    Eigen::VectorXd v = solver.eigenvectors().col(j);  // v^T A_minus v = 1
    const double bnorm = v.dot(pencil.a_minus.a * v);
    if (!(bnorm > 0.0))
      throw NumericalError("eigenvector has nonpositive A_minus energy");
    v /= std::sqrt(h * bnorm);  // h * v^T A_minus v = 1
    if (v(peak_index(v)) < 0.0) v = -v;

    const Eigen::VectorXd av = pencil.a_plus.a * v;
    const double denom = av.norm();
    if (!(denom > 0.0)) throw NumericalError("A_plus annihilates an eigenvector");
    const double res = (av - lambda * (pencil.a_minus.a * v)).norm() / denom;
    if (!(res <= tol))
      throw NumericalError("eigenpair " + std::to_string(j + 1) + " residual " +
                           std::to_string(res) + " exceeds tolerance");

    result.lambdas[static_cast<std::size_t>(j)] = lambda;
    result.vectors.col(j) = v;
    result.residuals[static_cast<std::size_t>(j)] = res;
    result.sign_profile[static_cast<std::size_t>(j)] = {v.minCoeff(), v.maxCoeff()};
  }

  if (!(result.lambdas.front() > 0.0))
    throw NumericalError("smallest eigenvalue is not strictly positive");
  result.gap = (k >= 2)
                   ? (result.lambdas[1] - result.lambdas[0]) / result.lambdas[0]
                   : std::numeric_limits<double>::quiet_NaN();
  return result;
}

double rayleigh_quotient(const Pencil& pencil, const Eigen::VectorXd& u) {
  if (u.size() != pencil.grid.n())
    throw std::invalid_argument("rayleigh_quotient: vector length does not match grid");
  if (u.isZero(0.0)) throw std::domain_error("rayleigh_quotient of the zero vector");
  const double denom = u.dot(pencil.a_minus.a * u);
  if (!(denom > 0.0))
    throw NumericalError("rayleigh_quotient: nonpositive A_minus energy");
  return u.dot(pencil.a_plus.a * u) / denom;
}

SignClass sign_classification(const Eigen::VectorXd& v, double rel_threshold) {
  if (v.size() == 0) throw std::invalid_argument("sign_classification: empty vector");
  if (!(rel_threshold >= 0.0))
    throw std::invalid_argument("sign_classification: threshold must be >= 0");
  const double ninf = v.cwiseAbs().maxCoeff();
  if (ninf == 0.0) return SignClass::degenerate;

  const bool flipped = v(peak_index(v)) < 0.0;
  const Eigen::VectorXd w = flipped ? Eigen::VectorXd(-v) : v;
  const double lo = w.minCoeff();
  const double hi = w.maxCoeff();
  const double cut = rel_threshold * ninf;

  if (lo > -cut && hi > 0.0)
    return flipped ? SignClass::negative : SignClass::positive;
  if (lo < -cut && hi > cut) return SignClass::sign_changing;
  return SignClass::degenerate;
}

Simplicity simplicity_diagnostic(const EigenResult& result, double gap_threshold) {
  if (result.lambdas.size() < 2)
    throw std::invalid_argument("simplicity_diagnostic needs at least two eigenvalues");
  return result.gap > gap_threshold ? Simplicity::simple
                                    : Simplicity::near_degenerate;
}

}  // namespace mixspec
