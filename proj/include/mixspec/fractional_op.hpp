#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mixspec/grid.hpp"
#include "mixspec/measure.hpp"

namespace mixspec {

// Discrete fractional Dirichlet operators on an interior lattice.
//
// For order s in (0,1) the one-dimensional operator uses the centered
// fractional-difference weights
//
//     g_k = (-1)^k Gamma(2s+1) / (Gamma(s-k+1) Gamma(s+k+1)),
//
// acting as ((-D)^s_h u)_i = h^{-2s} sum_k g_k u_{i-k} with u extended by
// zero outside the domain.  The weights satisfy g_0 > 0, g_k <= 0 for k >= 1,
// sum_k g_k = 0, decay like |k|^{-1-2s}, and have lattice Fourier symbol
// h^{-2s} (4 sin^2(pi xi h))^s -> (2 pi xi)^{2s}.  The endpoints of the order
// range use dedicated stencils: s = 0 is the identity, s = 1 the classical
// 3-point Laplacian.  Restricting the doubly infinite Toeplitz matrix to the
// interior nodes realizes the zero exterior condition; entries couple nodes
// across components of a disconnected domain.

struct OperatorMatrix {
  Eigen::MatrixXd a;               // dense symmetric n x n, positive semidefinite
  double h = 0.0;
  std::vector<MeasureAtom> atoms;  // superposed orders (a single order has weight 1)
};

// Kernel normalization constant of the order-s integral operator in dimension
// dim, chosen so the Fourier symbol is (2 pi |xi|)^{2s}:
//   c_{N,s} = 2^{2s-1} Gamma((N+2s)/2) / (pi^{N/2} Gamma(2-s)) * s (1-s).
// Requires dim >= 1 and 0 < s < 1 (the factor s(1-s) vanishes at the ends).
double cns_constant(int dim, double s);

// Weights g_0..g_kmax for order s in [0,1].  Computed through log-Gamma with
// the reflection formula folded in, so large k cannot overflow:
//   g_k = -(sin(pi s)/pi) Gamma(2s+1) Gamma(k-s) / Gamma(k+s+1),  k >= 1.
std::vector<double> stencil_weights(double s, int kmax);

// A[i][j] = h^{-2s} g_{|k_i - k_j|} over the grid's interior nodes.
OperatorMatrix assemble_single(const Grid& grid, double s);

// Nonnegative superposition sum_m w_m A_{s_m}; atoms are normalized and
// accumulated in ascending order of s for a reproducible summation order.
OperatorMatrix assemble_superposed(const Grid& grid,
                                   const std::vector<MeasureAtom>& atoms);

// u^T A u  (sizes must match).
double quadratic_form(const OperatorMatrix& op, const Eigen::VectorXd& u);

// Squared discrete Gagliardo-type seminorm  [u]^2_{s,h} = h * u^T A_s u.
// Equals h * sum u_i^2 at s = 0 and the squared forward-difference Dirichlet
// energy (with zero padding) at s = 1.
double seminorm_sq(const Grid& grid, const Eigen::VectorXd& u, double s);

// Energy norm of the plus part:  sum over plus atoms of w * [u]^2_{s,h}.
double xplus_norm_sq(const Grid& grid, const Eigen::VectorXd& u,
                     const SignedMeasure& measure);

// Lattice Fourier symbol h^{-2s} (4 sin^2(pi xi h))^s of the order-s stencil.
double fourier_symbol(double s, double h, double xi);

// Independent singular-integral evaluation of the order-s operator applied to
// the piecewise-linear interpolant of u (zero outside the domain):
//   c_{1,s} * Int_R [2u(x) - u(x+y) - u(x-y)] / |y|^{1+2s} dy
// at every node.  The radial integral splits into (0,h] handled by a Taylor
// correction with a local quadratic fit, [h,R] by composite Gauss quadrature
// on lattice cells (quad_points Gauss points per cell, >= 64 required), and
// [R,inf) in closed form.  Serves as an oracle for the stencil assembly; the
// two constructions are independent.
Eigen::VectorXd brute_force_apply(const Grid& grid, const Eigen::VectorXd& u,
                                  double s, int quad_points);

// (s, [u]^2_{s,h}) rows for a fixed vector over a list of orders.
struct SeminormTable {
  std::vector<std::pair<double, double>> entries;
};
SeminormTable seminorm_table(const Grid& grid, const Eigen::VectorXd& u,
                             const std::vector<double>& s_values);

}  // namespace mixspec
