#include "mixspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mixspec/errors.hpp"

namespace mixspec {

namespace {

constexpr double kSolveTol = 1e-8;

const char* kFindingDegenerate = "degenerate_at_small_s";
const char* kFindingSimple = "uniformly_simple";

SignedMeasure dirac_pair(double s_plus_weighted_at, double s_minus) {
  return combine(make_dirac(s_plus_weighted_at, MeasurePart::plus),
                 make_dirac(s_minus, MeasurePart::minus), s_plus_weighted_at);
}

// Plus part = unit mass at order 1 (classical side), minus part = unit mass
// at order s_minus.  The workhorse measure of most checks.
SignedMeasure classical_vs(double s_minus) { return dirac_pair(1.0, s_minus); }

EigenResult solve_on(const Grid& grid, const SignedMeasure& m, int k) {
  return smallest_eigenpairs(build_pencil(grid, m), k, kSolveTol);
}

SweepRow row_from(double parameter, const EigenResult& r) {
  SweepRow row;
  row.parameter = parameter;
  row.lambda1 = r.lambdas[0];
  row.lambda2 = r.lambdas.size() > 1 ? r.lambdas[1]
                                     : std::numeric_limits<double>::quiet_NaN();
  row.gap = r.gap;
  row.residual1 = r.residuals[0];
  row.min_v = r.sign_profile[0].first;
  row.max_v = r.sign_profile[0].second;
  return row;
}

void require_strictly_decreasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] < v[i]))
      throw std::domain_error(std::string(what) + " must be strictly decreasing");
}

// Zero-extension of a component-grid vector into the enclosing grid; node
// identities follow the shared global lattice.
Eigen::VectorXd lift(const Grid& whole, const Grid& part, const Eigen::VectorXd& v) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(whole.n());
  for (int i = 0; i < part.n(); ++i) {
    const int slot = whole.find_ordinal(part.nodes[static_cast<std::size_t>(i)].k);
    if (slot < 0)
      throw std::logic_error("component node missing from the enclosing lattice");
    w(slot) = v(i);
  }
  return w;
}

double l2h_distance(double h, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::sqrt(h * (a - b).squaredNorm());
}

// Largest principal angle between the column spans of two full-rank matrices.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qa(a), qb(b);
  const Eigen::MatrixXd qa_thin =
      qa.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXd qb_thin =
      qb.householderQ() * Eigen::MatrixXd::Identity(b.rows(), b.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(qa_thin.transpose() * qb_thin);
  const double smin = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(smin);
}

int component_peak_sign(const Grid& grid, const Eigen::VectorXd& v, int component) {
  double mag = -1.0;
  double val = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    if (grid.nodes[static_cast<std::size_t>(i)].component != component) continue;
    const double m = std::abs(v(i));
    if (m > mag) {
      mag = m;
      val = v(i);
    }
  }
  return val > 0.0 ? 1 : (val < 0.0 ? -1 : 0);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

ExperimentReport localization_sweep(const Domain& domain,
                                    const std::vector<MeasureAtom>& plus_atoms,
                                    const std::vector<double>& eps_list,
                                    double h, double tol_lambda,
                                    double tol_vector, double mass_at_zero,
                                    const std::string& name) {
  if (eps_list.empty())
    throw std::domain_error("localization needs a nonempty eps list");
  require_strictly_decreasing(eps_list, "eps list");
  if (!(eps_list.back() > 0.0))
    throw std::domain_error("eps values must be positive");
  if (!(mass_at_zero >= 0.0 && mass_at_zero < 1.0))
    throw std::domain_error("mass_at_zero must lie in [0,1)");

  SignedMeasure plus_part;
  plus_part.plus = normalize_atoms(plus_atoms);
  if (plus_part.plus.empty())
    throw std::domain_error("localization needs a nonempty plus part");
  const double s_top = plus_part.plus.back().s;
  if (!(eps_list.front() < s_top))
    throw std::domain_error("eps values must stay below the top plus order");

  const Grid grid = build_grid(domain, h);

  ExperimentReport report;
  report.name = name;
  report.tolerances = {{"lambda_rel", tol_lambda}, {"vector_l2", tol_vector}};

  // Reference problem: minus part entirely at order zero.
  const SignedMeasure ref_measure =
      combine(plus_part, make_dirac(0.0, MeasurePart::minus), s_top);
  const EigenResult ref = solve_on(grid, ref_measure, 2);
  const double lambda0 = ref.lambdas[0];
  report.evidence.emplace_back("lambda0", lambda0);

  std::vector<double> lambda_errs;
  double final_vec_err = 0.0;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double eps = eps_list[i];
    SignedMeasure minus_part;
    minus_part.minus = normalize_atoms(
        {{0.0, mass_at_zero}, {eps, 1.0 - mass_at_zero}});
    const EigenResult r =
        solve_on(grid, combine(plus_part, minus_part, s_top), 2);
    report.sweep.push_back(row_from(eps, r));

    Eigen::VectorXd v = r.vectors.col(0);
    if (v.dot(ref.vectors.col(0)) < 0.0) v = -v;
    const double vec_err = l2h_distance(grid.h, v, ref.vectors.col(0));
    const double lam_err = std::abs(r.lambdas[0] - lambda0);
    lambda_errs.push_back(lam_err);
    final_vec_err = vec_err;
    const std::string tag = "_" + std::to_string(i);
    report.evidence.emplace_back("lambda_abs_err" + tag, lam_err);
    report.evidence.emplace_back("vector_l2_err" + tag, vec_err);
  }

  bool monotone_tail = lambda_errs.size() >= 3;
  if (monotone_tail) {
    const std::size_t m = lambda_errs.size();
    monotone_tail = lambda_errs[m - 1] < lambda_errs[m - 2] &&
                    lambda_errs[m - 2] < lambda_errs[m - 3];
  }
  const double final_rel = lambda_errs.back() / lambda0;
  report.evidence.emplace_back("final_lambda_rel_err", final_rel);
  report.evidence.emplace_back("final_vector_l2_err", final_vec_err);
  report.evidence.emplace_back("tail_strictly_decreasing", monotone_tail ? 1.0 : 0.0);

  const bool converged = final_rel < tol_lambda && final_vec_err < tol_vector;
  if (lambda_errs.size() < 3) {
    report.verdict = Verdict::inconclusive;
    report.finding = "too_few_points_for_trend";
  } else if (monotone_tail && converged) {
    report.verdict = Verdict::pass;
    report.finding = "localizes_to_reference";
  } else {
    report.verdict = Verdict::fail;
    report.finding = monotone_tail ? "converged_outside_tolerance" : "no_monotone_tail";
  }
  return report;
}

ExperimentReport simplicity_positivity_check(const Domain& domain,
                                             double s_minus, double h,
                                             double gap_threshold,
                                             double sign_threshold) {
  if (domain.intervals.size() != 1)
    throw std::invalid_argument("simplicity_positivity_check needs a connected domain");

  const Grid grid = build_grid(domain, h);
  const EigenResult r = solve_on(grid, classical_vs(s_minus), 2);

  ExperimentReport report;
  report.name = "simplicity_positivity";
  report.tolerances = {{"gap_threshold", gap_threshold},
                       {"sign_threshold", sign_threshold}};
  report.sweep.push_back(row_from(s_minus, r));
  report.evidence.emplace_back("lambda1", r.lambdas[0]);
  report.evidence.emplace_back("lambda2", r.lambdas[1]);
  report.evidence.emplace_back("gap", r.gap);
  report.evidence.emplace_back("min_v", r.sign_profile[0].first);
  report.evidence.emplace_back("max_v", r.sign_profile[0].second);
  report.evidence.emplace_back("residual1", r.residuals[0]);

  const SignClass cls = sign_classification(r.vectors.col(0), sign_threshold);
  const bool one_signed = cls == SignClass::positive || cls == SignClass::negative;
  const bool simple = r.gap > gap_threshold;
  if (one_signed && simple) {
    report.verdict = Verdict::pass;
    report.finding = "simple_and_one_signed";
  } else if (one_signed) {
    report.verdict = Verdict::inconclusive;
    report.finding = "one_signed_but_gap_below_threshold";
  } else {
    report.verdict = Verdict::fail;
    report.finding = "first_eigenfunction_not_one_signed";
  }
  return report;
}

ExperimentReport sign_change_check(const Domain& domain,
                                   const std::vector<double>& s_list, double h,
                                   double sign_threshold) {
  if (domain.intervals.size() < 2)
    throw std::invalid_argument("sign_change_check needs a disconnected domain");
  if (s_list.empty()) throw std::domain_error("sign_change_check needs orders");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0))
      throw std::domain_error("sign_change_check orders must lie in (0,1)");

  const Grid grid = build_grid(domain, h);

  ExperimentReport report;
  report.name = "sign_change";
  report.tolerances = {{"sign_threshold", sign_threshold}};

  bool all_ok = true;
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    const double s = s_list[i];
    const EigenResult r = solve_on(grid, classical_vs(s), 2);
    report.sweep.push_back(row_from(s, r));

    const bool changes =
        sign_classification(r.vectors.col(0), sign_threshold) == SignClass::sign_changing;
    int positives = 0, negatives = 0;
    for (int c = 0; c < grid.component_count(); ++c) {
      const int sgn = component_peak_sign(grid, r.vectors.col(0), c);
      positives += sgn > 0;
      negatives += sgn < 0;
    }
    const bool mixed = positives > 0 && negatives > 0;
    const std::string tag = "_" + std::to_string(i);
    report.evidence.emplace_back("sign_changing" + tag, changes ? 1.0 : 0.0);
    report.evidence.emplace_back("components_mixed" + tag, mixed ? 1.0 : 0.0);
    all_ok = all_ok && changes && mixed;
  }

  report.verdict = all_ok ? Verdict::pass : Verdict::fail;
  report.finding = all_ok ? "sign_change_on_every_order" : "one_signed_minimizer_found";
  return report;
}

ExperimentReport union_inequality_check(const Domain& domain, double s_minus,
                                        double h, double margin_factor,
                                        int theta_points, double contrast_tol) {
  if (domain.intervals.size() != 2)
    throw std::invalid_argument("union_inequality_check needs exactly two components");
  if (theta_points < 2)
    throw std::invalid_argument("union_inequality_check needs at least two angles");

  const Grid grid = build_grid(domain, h);
  const Grid g1 = component_restriction(grid, 0);
  const Grid g2 = component_restriction(grid, 1);

  const SignedMeasure frac = classical_vs(s_minus);
  const Pencil pu = build_pencil(grid, frac);
  const EigenResult ru = smallest_eigenpairs(pu, 2, kSolveTol);
  const EigenResult r1 = solve_on(g1, frac, 1);
  const EigenResult r2 = solve_on(g2, frac, 1);

  const double lam_u = ru.lambdas[0];
  const double lam_min = std::min(r1.lambdas[0], r2.lambdas[0]);
  const double residual_scale =
      (ru.residuals[0] + r1.residuals[0] + r2.residuals[0]) * lam_min;
  const double margin_required = margin_factor * residual_scale;
  const double separation = lam_min - lam_u;

  // Zero-extended component minimizers, unit A_minus energy on the union.
  auto lift_unit = [&](const Grid& part, const Eigen::VectorXd& v) {
    Eigen::VectorXd w = lift(grid, part, v);
    return Eigen::VectorXd(w / std::sqrt(grid.h * w.dot(pu.a_minus.a * w)));
  };
  const Eigen::VectorXd w1 = lift_unit(g1, r1.vectors.col(0));
  const Eigen::VectorXd w2 = lift_unit(g2, r2.vectors.col(0));

  const double rq1 = rayleigh_quotient(pu, w1);
  const double rq2 = rayleigh_quotient(pu, w2);
  double min_mixed = std::min(rq1, rq2);
  constexpr double kHalfPi = 1.57079632679489661923;
  for (int t = 0; t < theta_points; ++t) {
    const double theta = kHalfPi * t / (theta_points - 1);
    const Eigen::VectorXd mix = std::cos(theta) * w1 + std::sin(theta) * w2;
    min_mixed = std::min(min_mixed, rayleigh_quotient(pu, mix));
  }

  // Contrast: with the minus part at order zero the components decouple and
  // the union minimum equals the component minimum.
  const SignedMeasure classical = classical_vs(0.0);
  const double cu = solve_on(grid, classical, 1).lambdas[0];
  const double c1 = solve_on(g1, classical, 1).lambdas[0];
  const double c2 = solve_on(g2, classical, 1).lambdas[0];
  const double contrast_rel =
      std::abs(cu - std::min(c1, c2)) / std::min(c1, c2);

  ExperimentReport report;
  report.name = "union_inequality";
  report.tolerances = {{"margin_factor", margin_factor},
                       {"contrast_tol", contrast_tol}};
  report.sweep.push_back(row_from(s_minus, ru));
  report.evidence.emplace_back("lambda_union", lam_u);
  report.evidence.emplace_back("lambda_comp1", r1.lambdas[0]);
  report.evidence.emplace_back("lambda_comp2", r2.lambdas[0]);
  report.evidence.emplace_back("separation", separation);
  report.evidence.emplace_back("margin_required", margin_required);
  report.evidence.emplace_back("rayleigh_lift1", rq1);
  report.evidence.emplace_back("rayleigh_lift2", rq2);
  report.evidence.emplace_back("min_mixed_rayleigh", min_mixed);
  report.evidence.emplace_back("contrast_rel_diff", contrast_rel);

  const bool strict_drop = separation > margin_required;
  const bool no_mixed_minimizer = (min_mixed - lam_u) > margin_required;
  const bool contrast_ok = contrast_rel <= contrast_tol;
  const bool ok = strict_drop && no_mixed_minimizer && contrast_ok;
  report.verdict = ok ? Verdict::pass : Verdict::fail;
  report.finding = ok ? "union_strictly_below_components"
                      : (strict_drop ? "mixing_or_contrast_violation"
                                     : "no_strict_drop");
  return report;
}

ExperimentReport simplicity_scan(const std::string& name, const Domain& domain,
                                 const std::vector<double>& s_list, double h,
                                 const std::string& expect, double gap_floor,
                                 double degenerate_ceiling) {
  if (domain.intervals.size() != 2)
    throw std::invalid_argument("simplicity_scan needs exactly two components");
  if (s_list.size() < 2)
    throw std::domain_error("simplicity_scan needs at least two orders");
  require_strictly_decreasing(s_list, "order list");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0))
      throw std::domain_error("simplicity_scan orders must lie in (0,1)");
  if (expect != "degenerate" && expect != "simple")
    throw std::invalid_argument("simplicity_scan expects 'degenerate' or 'simple'");

  const Grid grid = build_grid(domain, h);

  ExperimentReport report;
  report.name = name;
  report.tolerances = {{"gap_floor", gap_floor},
                       {"degenerate_ceiling", degenerate_ceiling}};

  std::vector<double> gammas;
  for (double s : s_list) {
    const EigenResult r = solve_on(grid, classical_vs(s), 2);
    report.sweep.push_back(row_from(s, r));
    gammas.push_back(r.gap);
  }
  // The degeneracy prediction is asymptotic in s -> 0 (the gap may first rise
  // before collapsing), so judge the trend on the three smallest orders.
  bool decreasing = true;
  const std::size_t m = gammas.size();
  for (std::size_t i = (m >= 3 ? m - 3 : 0); i + 1 < m; ++i)
    decreasing = decreasing && gammas[i + 1] < gammas[i];
  const double gamma_min = *std::min_element(gammas.begin(), gammas.end());

  report.evidence.emplace_back("gamma_final", gammas.back());
  report.evidence.emplace_back("gamma_min", gamma_min);
  report.evidence.emplace_back("tail_strictly_decreasing", decreasing ? 1.0 : 0.0);

  const bool looks_degenerate = decreasing && gammas.back() < degenerate_ceiling;
  const bool looks_simple = gamma_min >= gap_floor;
  if (looks_degenerate && !looks_simple)
    report.finding = kFindingDegenerate;
  else if (looks_simple && !looks_degenerate)
    report.finding = kFindingSimple;
  else
    report.finding = "unclassified";

  const char* wanted =
      expect == "degenerate" ? kFindingDegenerate : kFindingSimple;
  const char* opposite =
      expect == "degenerate" ? kFindingSimple : kFindingDegenerate;
  if (report.finding == wanted)
    report.verdict = Verdict::pass;
  else if (report.finding == opposite)
    report.verdict = Verdict::fail;
  else
    report.verdict = Verdict::inconclusive;
  return report;
}

ExperimentReport classical_limit_oracle(const std::string& name,
                                        const Domain& domain, double h,
                                        double eq_tol, double angle_tol,
                                        double degenerate_tol,
                                        double gap_threshold) {
  const Grid grid = build_grid(domain, h);
  const int m = grid.component_count();

  const SignedMeasure classical = classical_vs(0.0);
  const EigenResult ru = solve_on(grid, classical, 2);

  std::vector<Grid> parts;
  std::vector<EigenResult> comp;
  for (int c = 0; c < m; ++c) {
    parts.push_back(component_restriction(grid, c));
    comp.push_back(solve_on(parts.back(), classical, 1));
  }
  std::vector<double> lams;
  for (const auto& r : comp) lams.push_back(r.lambdas[0]);
  std::vector<int> order(lams.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lams[static_cast<std::size_t>(a)] <
                                       lams[static_cast<std::size_t>(b)]; });
  const double lam_min = lams[static_cast<std::size_t>(order[0])];
  const double eq_rel = std::abs(ru.lambdas[0] - lam_min) / lam_min;

  ExperimentReport report;
  report.name = name;
  report.tolerances = {{"eq_tol", eq_tol},
                       {"angle_tol", angle_tol},
                       {"degenerate_tol", degenerate_tol},
                       {"gap_threshold", gap_threshold}};
  report.sweep.push_back(row_from(0.0, ru));
  report.evidence.emplace_back("lambda_union", ru.lambdas[0]);
  report.evidence.emplace_back("lambda_component_min", lam_min);
  report.evidence.emplace_back("equality_rel_diff", eq_rel);
  report.evidence.emplace_back("union_gap", ru.gap);
  for (std::size_t c = 0; c < lams.size(); ++c)
    report.evidence.emplace_back("lambda_comp_" + std::to_string(c), lams[c]);

  const bool eq_ok = eq_rel <= eq_tol;
  bool structure_ok = true;
  if (m >= 2) {
    const double second = lams[static_cast<std::size_t>(order[1])];
    const bool tied = (second - lam_min) / lam_min <= degenerate_tol;
    if (tied) {
      // Tied component minima: the union pair must collapse and its
      // eigenspace must match the lifted component minimizers.
      const bool pair_ok = ru.gap <= degenerate_tol;
      Eigen::MatrixXd lifted(grid.n(), 2);
      lifted.col(0) = lift(grid, parts[static_cast<std::size_t>(order[0])],
                           comp[static_cast<std::size_t>(order[0])].vectors.col(0));
      lifted.col(1) = lift(grid, parts[static_cast<std::size_t>(order[1])],
                           comp[static_cast<std::size_t>(order[1])].vectors.col(0));
      const double angle = max_principal_angle(ru.vectors, lifted);
      report.evidence.emplace_back("subspace_angle", angle);
      structure_ok = pair_ok && angle < angle_tol;
      report.finding = structure_ok ? "tied_minima_matched_eigenspace"
                                    : "tied_minima_structure_mismatch";
    } else {
      structure_ok = ru.gap > gap_threshold;
      report.finding = structure_ok ? "strict_minimum_simple"
                                    : "expected_simple_minimum";
    }
  } else {
    report.finding = "single_component_identity";
  }

  report.verdict = (eq_ok && structure_ok) ? Verdict::pass : Verdict::fail;
  return report;
}

ExperimentReport seminorm_lemma_checks(
    const Domain& domain, const std::vector<double>& h_list,
    const std::vector<std::pair<double, double>>& s_pairs,
    const std::vector<double>& eps_list, int n_probes, int modes,
    std::uint64_t seed, double ratio_lo, double ratio_hi, double defect_tol) {
  if (h_list.size() < 2)
    throw std::invalid_argument("seminorm_lemma_checks needs at least two spacings");
  require_strictly_decreasing(h_list, "spacing list");
  if (s_pairs.empty()) throw std::domain_error("seminorm_lemma_checks needs order pairs");
  for (const auto& [s1, s2] : s_pairs)
    if (!(s1 >= 0.0 && s2 <= 1.0 && s1 < s2))
      throw std::domain_error("order pairs must satisfy 0 <= s1 < s2 <= 1");
  if (!eps_list.empty()) {
    require_strictly_decreasing(eps_list, "eps list");
    if (!(eps_list.back() > 0.0 && eps_list.front() < 1.0))
      throw std::domain_error("eps values must lie in (0,1)");
  }
  if (n_probes < 1 || modes < 1)
    throw std::domain_error("seminorm_lemma_checks needs probes and modes");

  ExperimentReport report;
  report.name = "seminorm_bounds";
  report.seed = seed;
  report.tolerances = {{"ratio_lo", ratio_lo},
                       {"ratio_hi", ratio_hi},
                       {"defect_tol", defect_tol}};

  const SmoothProbeSet probes(domain, n_probes, modes, seed);

  // (a) best-constant estimates across refinements.
  bool ratios_ok = true;
  std::vector<std::vector<double>> constants(s_pairs.size());
  for (std::size_t hi = 0; hi < h_list.size(); ++hi) {
    const Grid grid = build_grid(domain, h_list[hi]);
    for (std::size_t pi = 0; pi < s_pairs.size(); ++pi) {
      const OperatorMatrix a1 = assemble_single(grid, s_pairs[pi].first);
      const OperatorMatrix a2 = assemble_single(grid, s_pairs[pi].second);
      double best = 0.0;
      for (int p = 0; p < probes.size(); ++p) {
        const Eigen::VectorXd u = probes.evaluate(grid, p);
        const double denom = quadratic_form(a2, u);
        if (!(denom > 0.0))
          throw NumericalError("probe has nonpositive higher-order energy");
        best = std::max(best, std::sqrt(quadratic_form(a1, u) / denom));
      }
      constants[pi].push_back(best);
      report.evidence.emplace_back(
          "constant_pair" + std::to_string(pi) + "_h" + std::to_string(hi), best);
    }
  }
  for (std::size_t pi = 0; pi < s_pairs.size(); ++pi) {
    for (std::size_t hi = 0; hi + 1 < constants[pi].size(); ++hi) {
      const double ratio = constants[pi][hi + 1] / constants[pi][hi];
      report.evidence.emplace_back(
          "refinement_ratio_pair" + std::to_string(pi) + "_" + std::to_string(hi),
          ratio);
      ratios_ok = ratios_ok && std::isfinite(ratio) && ratio >= ratio_lo &&
                  ratio <= ratio_hi;
    }
  }

  // (b) order -> 0 collapse of the seminorm onto the squared mass.
  bool defects_ok = true;
  if (!eps_list.empty()) {
    const Grid grid = build_grid(domain, h_list.back());
    const EigenResult r = solve_on(grid, classical_vs(0.0), 1);
    const Eigen::VectorXd u = r.vectors.col(0);
    const double mass_sq = grid.h * u.squaredNorm();  // = 1 by normalization
    double prev = std::numeric_limits<double>::infinity();
    double defect = 0.0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      defect = std::abs(seminorm_sq(grid, u, eps_list[i]) - mass_sq);
      report.evidence.emplace_back("defect_" + std::to_string(i), defect);
      defects_ok = defects_ok && defect < prev;
      prev = defect;
    }
    defects_ok = defects_ok && defect < defect_tol * mass_sq;
    report.evidence.emplace_back("final_defect", defect);
  }

  report.verdict = (ratios_ok && defects_ok) ? Verdict::pass : Verdict::fail;
  report.finding = report.verdict == Verdict::pass
                       ? "constants_stable_and_defect_vanishing"
                       : (ratios_ok ? "defect_not_vanishing" : "constant_unstable");
  return report;
}

bool boundary_bound_holds(const Grid& grid, const Eigen::VectorXd& v,
                          double depth_fraction, double slope_floor_rel,
                          std::vector<std::pair<std::string, double>>* evidence) {
  if (v.size() != grid.n())
    throw std::invalid_argument("boundary_bound_holds: vector length does not match grid");
  if (!(depth_fraction > 0.0 && depth_fraction <= 0.5))
    throw std::domain_error("depth_fraction must lie in (0, 0.5]");

  auto push = [&](const std::string& label, double value) {
    if (evidence) evidence->emplace_back(label, value);
  };

  // Derivative at the endpoint of the quadratic through (0,0), (d1,v1), (d2,v2).
  auto boundary_slope = [](double d1, double v1, double d2, double v2) {
    return (v1 * d2 * d2 - v2 * d1 * d1) / (d1 * d2 * (d2 - d1));
  };

  bool ok = true;
  for (int c = 0; c < grid.component_count(); ++c) {
    const Interval& iv = grid.domain.intervals[static_cast<std::size_t>(c)];
    std::vector<int> slots;
    for (int i = 0; i < grid.n(); ++i)
      if (grid.nodes[static_cast<std::size_t>(i)].component == c) slots.push_back(i);

    const auto x_of = [&](std::size_t r) {
      return grid.nodes[static_cast<std::size_t>(slots[r])].x;
    };
    const auto v_of = [&](std::size_t r) { return v(slots[r]); };
    const std::size_t last = slots.size() - 1;

    const double slope_left = boundary_slope(x_of(0) - iv.a, v_of(0),
                                             x_of(1) - iv.a, v_of(1));
    const double slope_right = boundary_slope(iv.b - x_of(last), v_of(last),
                                              iv.b - x_of(last - 1), v_of(last - 1));
    double vmax = 0.0;
    for (std::size_t r = 0; r < slots.size(); ++r)
      vmax = std::max(vmax, std::abs(v_of(r)));
    const double slope_floor = slope_floor_rel * vmax / iv.length();
    const double c0 = 0.5 * std::min(slope_left, slope_right);

    const std::string tag = "_" + std::to_string(c);
    push("slope_left" + tag, slope_left);
    push("slope_right" + tag, slope_right);
    push("c0" + tag, c0);

    if (!(slope_left >= slope_floor && slope_right >= slope_floor)) {
      push("slope_floor" + tag, slope_floor);
      ok = false;
      continue;
    }

    const double depth = depth_fraction * iv.length();
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < slots.size(); ++r) {
      const double dist = std::min(x_of(r) - iv.a, iv.b - x_of(r));
      if (dist > depth) continue;
      min_margin = std::min(min_margin, v_of(r) - c0 * dist);
    }
    push("min_margin" + tag, min_margin);
    ok = ok && min_margin >= 0.0;
  }
  return ok;
}

ExperimentReport boundary_growth_check(const Domain& domain, double s_minus,
                                       double h, double depth_fraction,
                                       double slope_floor_rel,
                                       double sign_threshold) {
  if (domain.intervals.size() != 1)
    throw std::invalid_argument("boundary_growth_check needs a connected domain");

  const Grid grid = build_grid(domain, h);
  const EigenResult r = solve_on(grid, classical_vs(s_minus), 1);

  ExperimentReport report;
  report.name = "boundary_growth";
  report.tolerances = {{"depth_fraction", depth_fraction},
                       {"slope_floor_rel", slope_floor_rel},
                       {"sign_threshold", sign_threshold}};
  report.sweep.push_back(row_from(s_minus, r));

  const bool positive =
      sign_classification(r.vectors.col(0), sign_threshold) == SignClass::positive;
  report.evidence.emplace_back("one_signed", positive ? 1.0 : 0.0);
  const bool bound_ok = boundary_bound_holds(grid, r.vectors.col(0), depth_fraction,
                                             slope_floor_rel, &report.evidence);

  report.verdict = (positive && bound_ok) ? Verdict::pass : Verdict::fail;
  report.finding = report.verdict == Verdict::pass
                       ? "linear_growth_off_boundary"
                       : (positive ? "bound_violated" : "not_one_signed");
  return report;
}

}  // namespace mixspec
