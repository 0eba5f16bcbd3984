#include "mixspec/fractional_op.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mixspec/errors.hpp"
#include "mixspec/quadrature.hpp"

namespace mixspec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_order_in_closed_unit(double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("order s=" + std::to_string(s) + " outside [0,1]");
}

// h^{-2s}; exact inverse square at s = 1 so the classical stencil is exact.
double inv_h_pow(double h, double s) {
  if (s == 0.0) return 1.0;
  if (s == 1.0) return 1.0 / (h * h);
  return std::exp(-2.0 * s * std::log(h));
}

}  // namespace

double cns_constant(int dim, double s) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("kernel constant requires 0 < s < 1");
  const double n = static_cast<double>(dim);
  return std::exp((2.0 * s - 1.0) * std::numbers::ln2 +
                  std::lgamma(0.5 * (n + 2.0 * s)) -
                  0.5 * n * std::log(kPi) - std::lgamma(2.0 - s)) *
         s * (1.0 - s);
}

std::vector<double> stencil_weights(double s, int kmax) {
  require_order_in_closed_unit(s);
  if (kmax < 0) throw std::invalid_argument("stencil_weights: kmax must be >= 0");
  std::vector<double> g(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (s == 0.0) {  // identity
    g[0] = 1.0;
    return g;
  }
  if (s == 1.0) {  // 3-point Laplacian
    g[0] = 2.0;
    if (kmax >= 1) g[1] = -1.0;
    return g;
  }
  const double lg_top = std::lgamma(2.0 * s + 1.0);
  g[0] = std::exp(lg_top - 2.0 * std::lgamma(s + 1.0));
  // Gamma(s-k+1) alternates sign and blows up with k; the reflection formula
  // turns it into Gamma(k-s) with positive argument and a fixed sin factor.
  const double front = std::sin(kPi * s) / kPi;
  for (int k = 1; k <= kmax; ++k)
    g[static_cast<std::size_t>(k)] =
        -front * std::exp(lg_top + std::lgamma(k - s) - std::lgamma(k + s + 1.0));
  return g;
}

OperatorMatrix assemble_single(const Grid& grid, double s) {
  require_order_in_closed_unit(s);
  const int n = grid.n();
  if (n == 0) throw std::domain_error("assemble_single: empty grid");

  const long long span = grid.nodes.back().k - grid.nodes.front().k;
  const std::vector<double> g = stencil_weights(s, static_cast<int>(span));
  const double scale = inv_h_pow(grid.h, s);

  OperatorMatrix op;
  op.h = grid.h;
  op.atoms = {{s, 1.0}};
  op.a.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const long long d = grid.nodes[j].k - grid.nodes[i].k;
      const double v = scale * g[static_cast<std::size_t>(d)];
      op.a(i, j) = v;
      op.a(j, i) = v;
    }
  }
  return op;
}

OperatorMatrix assemble_superposed(const Grid& grid,
                                   const std::vector<MeasureAtom>& atoms) {
  const std::vector<MeasureAtom> norm = normalize_atoms(atoms);
  if (norm.empty())
    throw std::domain_error("assemble_superposed: no atoms with positive weight");
  const int n = grid.n();
  OperatorMatrix op;
  op.h = grid.h;
  op.atoms = norm;
  op.a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& atom : norm)  // ascending s: fixed summation order
    op.a += atom.weight * assemble_single(grid, atom.s).a;
  return op;
}

double quadratic_form(const OperatorMatrix& op, const Eigen::VectorXd& u) {
  if (u.size() != op.a.rows())
    throw std::invalid_argument("quadratic_form: vector length " +
                                std::to_string(u.size()) + " != matrix size " +
                                std::to_string(op.a.rows()));
  return u.dot(op.a * u);
}

double seminorm_sq(const Grid& grid, const Eigen::VectorXd& u, double s) {
  if (u.size() != grid.n())
    throw std::invalid_argument("seminorm_sq: vector length does not match grid");
  return grid.h * quadratic_form(assemble_single(grid, s), u);
}

double xplus_norm_sq(const Grid& grid, const Eigen::VectorXd& u,
                     const SignedMeasure& measure) {
  if (measure.plus.empty())
    throw std::domain_error("xplus_norm_sq: measure has an empty plus part");
  const OperatorMatrix op = assemble_superposed(grid, measure.plus);
  return grid.h * quadratic_form(op, u);
}

double fourier_symbol(double s, double h, double xi) {
  require_order_in_closed_unit(s);
  if (!(h > 0.0)) throw std::domain_error("fourier_symbol: h must be positive");
  const double sn = 2.0 * std::sin(kPi * xi * h);
  return inv_h_pow(h, s) * std::pow(sn * sn, s);
}

Eigen::VectorXd brute_force_apply(const Grid& grid, const Eigen::VectorXd& u,
                                  double s, int quad_points) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("brute_force_apply requires 0 < s < 1");
  if (quad_points < 64)
    throw std::invalid_argument("brute_force_apply: need at least 64 Gauss points per cell");
  if (u.size() != grid.n())
    throw std::invalid_argument("brute_force_apply: vector length does not match grid");

  const double h = grid.h;
  const double c = cns_constant(1, s);

  // Value of the zero-extended lattice function at an arbitrary lattice index.
  auto at = [&](long long k) -> double {
    const int i = grid.find_ordinal(k);
    return i < 0 ? 0.0 : u(i);
  };
  // Piecewise-linear interpolant of the zero-extended lattice function.
  auto interp = [&](double t) -> double {
    const double r = t / h;
    const double fl = std::floor(r);
    const long long k0 = static_cast<long long>(fl);
    const double w = r - fl;
    return (1.0 - w) * at(k0) + w * at(k0 + 1);
  };

  const QuadRule cell = gauss_legendre(quad_points, 0.0, 1.0);
  const double x_lo = grid.nodes.front().x;
  const double x_hi = grid.nodes.back().x;

  Eigen::VectorXd out(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    const double x = grid.nodes[i].x;
    const long long ki = grid.nodes[i].k;
    const double ui = u(i);

    // (0,h]: second differences shrink like y^2; integrate the local
    // quadratic fit -u''(x) y^2 against y^{-1-2s} in closed form.
    const double second = 2.0 * ui - at(ki - 1) - at(ki + 1);
    const double near = 2.0 * (second / (h * h)) *
                        std::pow(h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

    // [h, R]: beyond R the interpolant vanishes on both sides.
    const double reach = std::max(x - (x_lo - h), (x_hi + h) - x);
    const long long cells = std::max<long long>(1, static_cast<long long>(std::ceil(reach / h)));
    double mid = 0.0;
    for (long long m = 1; m <= cells; ++m) {
      const double y0 = m * h;
      double acc = 0.0;
      for (int q = 0; q < quad_points; ++q) {
        const double y = y0 + cell.nodes[q] * h;
        const double diff = 2.0 * ui - interp(x + y) - interp(x - y);
        acc += cell.weights[q] * h * diff * std::pow(y, -1.0 - 2.0 * s);
      }
      mid += acc;
    }
    mid *= 2.0;

    // [R, inf): both translates are zero, the integrand is 2 u(x) y^{-1-2s}.
    const double R = (cells + 1) * h;
    const double far = 2.0 * ui * std::pow(R, -2.0 * s) / s;

    out(i) = c * (near + mid + far);
  }
  return out;
}

SeminormTable seminorm_table(const Grid& grid, const Eigen::VectorXd& u,
                             const std::vector<double>& s_values) {
  SeminormTable table;
  table.entries.reserve(s_values.size());
  for (double s : s_values)
    table.entries.emplace_back(s, seminorm_sq(grid, u, s));
  return table;
}

}  // namespace mixspec
