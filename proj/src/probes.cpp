#include "mixspec/probes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mixspec {

SmoothProbeSet::SmoothProbeSet(const Domain& domain, int n_probes, int modes,
                               std::uint64_t seed)
    : domain_(domain), n_probes_(n_probes), modes_(modes) {
  if (n_probes < 1 || modes < 1)
    throw std::invalid_argument("SmoothProbeSet needs n_probes >= 1 and modes >= 1");
  DetRng rng(seed);
  const std::size_t per_probe = domain.intervals.size() * static_cast<std::size_t>(modes);
  coeffs_.resize(static_cast<std::size_t>(n_probes));
  for (auto& c : coeffs_) {
    c.resize(per_probe);
    for (auto& v : c) v = rng.normal();
  }
}

Eigen::VectorXd SmoothProbeSet::evaluate(const Grid& grid, int p) const {
  if (p < 0 || p >= n_probes_)
    throw std::out_of_range("probe index out of range");
  if (grid.component_count() != static_cast<int>(domain_.intervals.size()))
    throw std::invalid_argument("probe set and grid cover different domains");

  const auto& c = coeffs_[static_cast<std::size_t>(p)];
  Eigen::VectorXd u(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    const GridNode& node = grid.nodes[static_cast<std::size_t>(i)];
    const Interval& iv = domain_.intervals[static_cast<std::size_t>(node.component)];
    const double t = (node.x - iv.a) / iv.length();
    double v = 0.0;
    for (int m = 0; m < modes_; ++m)
      v += c[static_cast<std::size_t>(node.component) * modes_ + m] *
           std::sin((m + 1) * std::numbers::pi * t);
    u(i) = v;
  }
  return u;
}

}  // namespace mixspec
