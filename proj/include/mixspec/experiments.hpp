#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixspec/eigensolver.hpp"
#include "mixspec/grid.hpp"
#include "mixspec/measure.hpp"
#include "mixspec/probes.hpp"

namespace mixspec {

// Each check pits a solver run against a qualitative spectral prediction and
// returns a verdict with numeric evidence.  `pass` means the prediction held
// with the configured margins, `fail` means it was contradicted,
// `inconclusive` means the run could not certify either way.

enum class Verdict { pass, fail, inconclusive };
const char* to_string(Verdict v);

// One sweep point (eigenvalues, relative gap, first residual, range of the
// first eigenvector).
struct SweepRow {
  double parameter = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  double residual1 = 0.0;
  double min_v = 0.0;
  double max_v = 0.0;
};

struct ExperimentReport {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  std::string finding;  // short outcome label
  std::vector<std::pair<std::string, double>> evidence;
  std::vector<SweepRow> sweep;
  nlohmann::json parameters;  // echo of the run configuration
  nlohmann::json tolerances;
  std::uint64_t seed = 0;
};

// Concentrate the minus part at order eps and drive eps -> 0: the eigenvalue
// must approach the reference problem whose minus part sits at order zero
// (plain L^2 mass).  eps_list must be strictly decreasing; the last three
// eigenvalue errors must decrease strictly; the final relative eigenvalue
// error must stay below tol_lambda and the final eigenvector L^2 distance
// below tol_vector.  mass_at_zero in [0,1) splits the minus mass between
// order 0 and order eps to probe the multi-atom form of the limit.
ExperimentReport localization_sweep(const Domain& domain,
                                    const std::vector<MeasureAtom>& plus_atoms,
                                    const std::vector<double>& eps_list,
                                    double h, double tol_lambda,
                                    double tol_vector, double mass_at_zero,
                                    const std::string& name = "localization");

// Connected domain: the first eigenvalue must be simple (relative gap above
// gap_threshold) with a one-signed eigenfunction (up to sign_threshold of its
// max magnitude).  Pass requires both; a positive eigenfunction with a small
// gap is inconclusive.
ExperimentReport simplicity_positivity_check(const Domain& domain,
                                             double s_minus, double h,
                                             double gap_threshold,
                                             double sign_threshold);

// Disconnected domain: for every order in s_list the first eigenfunction must
// change sign, and the dominant sign per component must not all agree.
ExperimentReport sign_change_check(const Domain& domain,
                                   const std::vector<double>& s_list, double h,
                                   double sign_threshold);

// Two-component domain: the first eigenvalue of the union must sit strictly
// below the first eigenvalue of each component by a margin exceeding
// margin_factor times the combined solver residual scale, and every
// nonnegative mixing cos(t) u1 + sin(t) u2 of the zero-extended component
// minimizers must keep a Rayleigh quotient above the union eigenvalue by the
// same margin (theta_points angles on [0, pi/2]).  With the minus part at
// order zero the union eigenvalue must instead equal the component minimum to
// contrast_tol (relative).
ExperimentReport union_inequality_check(const Domain& domain, double s_minus,
                                        double h, double margin_factor,
                                        int theta_points, double contrast_tol);

// Two-component domain: scan the relative gap gamma(s) of the first two
// eigenvalues over a strictly decreasing order list.  Finding
// "degenerate_at_small_s" = gamma strictly decreasing over the three smallest
// orders with final value below degenerate_ceiling (the collapse is an s -> 0
// asymptote; gamma may rise before it turns over); finding "uniformly_simple"
// = gamma at least gap_floor everywhere.  Pass iff the finding matches
// `expect` ("degenerate"/"simple").
ExperimentReport simplicity_scan(const std::string& name, const Domain& domain,
                                 const std::vector<double>& s_list, double h,
                                 const std::string& expect, double gap_floor,
                                 double degenerate_ceiling);

// Minus part at order zero (plain mass): the first eigenvalue of a union must
// equal the smallest component eigenvalue to eq_tol (relative).  When the two
// smallest component eigenvalues coincide (within degenerate_tol) the union
// pair must be near-degenerate and its two-dimensional eigenspace must match
// the span of the zero-extended component minimizers to angle_tol radians;
// otherwise the union eigenvalue must be simple.
ExperimentReport classical_limit_oracle(const std::string& name,
                                        const Domain& domain, double h,
                                        double eq_tol, double angle_tol,
                                        double degenerate_tol,
                                        double gap_threshold);

// (a) For every order pair (s1 < s2) estimate the best constant in
// [u]_{s1,h} <= C [u]_{s2,h} as the max ratio over a fixed family of smooth
// random probes, on each lattice in h_list; consecutive estimates must stay
// within [ratio_lo, ratio_hi] of each other.  (b) On the finest lattice, for
// a unit-mass first eigenfunction u of the classical problem the defect
// |[u]^2_{eps,h} - ||u||^2| must decrease strictly along the (decreasing)
// eps_list and end below defect_tol.
ExperimentReport seminorm_lemma_checks(
    const Domain& domain, const std::vector<double>& h_list,
    const std::vector<std::pair<double, double>>& s_pairs,
    const std::vector<double>& eps_list, int n_probes, int modes,
    std::uint64_t seed, double ratio_lo, double ratio_hi, double defect_tol);

// Connected domain: the positive first eigenfunction must grow at least
// linearly off the boundary, v(x) >= c0 * dist(x, boundary) for all nodes
// within depth_fraction of the interval length, where c0 is half the boundary
// slope estimated from the two nodes nearest each endpoint.  The estimated
// slopes must clear slope_floor_rel * ||v||_inf / |interval|.
ExperimentReport boundary_growth_check(const Domain& domain, double s_minus,
                                       double h, double depth_fraction,
                                       double slope_floor_rel,
                                       double sign_threshold);

// Core of boundary_growth_check, exposed so manufactured profiles can be
// tested directly.  Appends slope/margin numbers to `evidence` when non-null.
bool boundary_bound_holds(const Grid& grid, const Eigen::VectorXd& v,
                          double depth_fraction, double slope_floor_rel,
                          std::vector<std::pair<std::string, double>>* evidence);

}  // namespace mixspec
