#pragma once

#include <vector>

namespace mixspec {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a,b].  Nodes and weights come from the
// symmetric tridiagonal Jacobi matrix of the Legendre three-term recurrence
// (Golub-Welsch); exact for polynomials of degree <= 2n-1.
QuadRule gauss_legendre(int n, double a, double b);

}  // namespace mixspec
