#include "mixspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mixspec/errors.hpp"
#include "mixspec/quadrature.hpp"

namespace mixspec {

std::vector<MeasureAtom> normalize_atoms(std::vector<MeasureAtom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.s >= 0.0 && a.s <= 1.0))
      throw std::domain_error("measure atom order s=" + std::to_string(a.s) +
                              " outside [0,1]");
    if (!(a.weight >= 0.0))
      throw std::domain_error("measure atom at s=" + std::to_string(a.s) +
                              " has negative weight");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const MeasureAtom& x, const MeasureAtom& y) { return x.s < y.s; });
  std::vector<MeasureAtom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.weight == 0.0) continue;
    if (!out.empty() && out.back().s == a.s)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  return out;
}

double total_mass(const std::vector<MeasureAtom>& atoms) {
  double m = 0.0;
  for (const auto& a : atoms) m += a.weight;
  return m;
}

double mass_at_or_above(const std::vector<MeasureAtom>& atoms, double s0) {
  double m = 0.0;
  for (const auto& a : atoms)
    if (a.s >= s0) m += a.weight;
  return m;
}

SignedMeasure make_dirac(double s, MeasurePart part) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("dirac order s=" + std::to_string(s) +
                            " outside [0,1]");
  if (part == MeasurePart::minus && s >= 1.0)
    throw std::domain_error("minus-part dirac must sit strictly below order 1");
  SignedMeasure m;
  if (part == MeasurePart::plus)
    m.plus = {{s, 1.0}};
  else
    m.minus = {{s, 1.0}};
  return m;
}

SignedMeasure from_density(const std::function<double(double)>& density,
                           double a, double b, int n_quad, MeasurePart part) {
  if (!(a >= 0.0 && b <= 1.0 && a < b))
    throw std::domain_error("density support [" + std::to_string(a) + "," +
                            std::to_string(b) + "] is not a subinterval of [0,1]");
  if (n_quad < 1) throw std::domain_error("from_density needs n_quad >= 1");

  const QuadRule rule = gauss_legendre(n_quad, a, b);
  std::vector<MeasureAtom> atoms;
  atoms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double f = density(rule.nodes[i]);
    if (!(f >= 0.0))
      throw std::domain_error("density is negative at node s=" +
                              std::to_string(rule.nodes[i]));
    atoms.push_back({rule.nodes[i], f * rule.weights[i]});
  }
  SignedMeasure m;
  if (part == MeasurePart::plus)
    m.plus = normalize_atoms(std::move(atoms));
  else
    m.minus = normalize_atoms(std::move(atoms));
  return m;
}

SignedMeasure combine(const SignedMeasure& plus_part,
                      const SignedMeasure& minus_part, double s_bar) {
  if (!plus_part.minus.empty())
    throw std::invalid_argument("combine: first argument must be plus-only");
  if (!minus_part.plus.empty())
    throw std::invalid_argument("combine: second argument must be minus-only");
  SignedMeasure m;
  m.plus = normalize_atoms(plus_part.plus);
  m.minus = normalize_atoms(minus_part.minus);
  m.s_bar = s_bar;
  validate_solvable(m);
  return m;
}

void validate_solvable(const SignedMeasure& m) {
  if (!(m.s_bar > 0.0 && m.s_bar <= 1.0))
    throw StructuralError("split order s_bar must lie in (0,1]");
  if (!(mass_at_or_above(m.plus, m.s_bar) > 0.0))
    throw StructuralError("plus part has no mass at or above s_bar=" +
                          std::to_string(m.s_bar));
  // The minus part must live strictly below s_bar; an atom exactly at s_bar
  // already counts as mass on [s_bar, 1] and is rejected.
  for (const auto& a : m.minus)
    if (a.s >= m.s_bar)
      throw StructuralError("minus part has mass at s=" + std::to_string(a.s) +
                            " >= s_bar=" + std::to_string(m.s_bar));
}

}  // namespace mixspec
