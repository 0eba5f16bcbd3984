#include "mixspec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mixspec/errors.hpp"

namespace mixspec {

namespace {

std::string interval_str(const Interval& iv) {
  return "(" + std::to_string(iv.a) + "," + std::to_string(iv.b) + ")";
}

}  // namespace

double Domain::total_length() const {
  double len = 0.0;
  for (const auto& iv : intervals) len += iv.length();
  return len;
}

Domain make_domain(std::vector<Interval> intervals) {
  if (intervals.empty())
    throw std::domain_error("domain needs at least one interval");
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.a) || !std::isfinite(iv.b))
      throw std::domain_error("domain interval has non-finite endpoint");
    if (!(iv.a < iv.b))
      throw std::domain_error("degenerate interval " + interval_str(iv));
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
    if (!(intervals[i].b < intervals[i + 1].a))
      throw std::domain_error("intervals " + interval_str(intervals[i]) + " and " +
                              interval_str(intervals[i + 1]) +
                              " have touching or overlapping closures");
  }
  Domain d;
  d.intervals = std::move(intervals);
  return d;
}

Grid build_grid(const Domain& domain, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("lattice spacing must be positive");
  if (domain.intervals.empty())
    throw std::domain_error("domain needs at least one interval");

  for (const auto& iv : domain.intervals)
    if (iv.length() < 4.0 * h)
      throw ResolutionError("interval " + interval_str(iv) +
                            " is shorter than 4h; refine the lattice");
  for (std::size_t i = 0; i + 1 < domain.intervals.size(); ++i) {
    const double gap = domain.intervals[i + 1].a - domain.intervals[i].b;
    if (gap < 2.0 * h)
      throw ResolutionError(
          "gap between " + interval_str(domain.intervals[i]) + " and " +
          interval_str(domain.intervals[i + 1]) +
          " is narrower than 2h; the lattice cannot separate the components");
  }

  Grid grid;
  grid.domain = domain;
  grid.h = h;
  for (std::size_t j = 0; j < domain.intervals.size(); ++j) {
    const Interval& iv = domain.intervals[j];
    long long k = static_cast<long long>(std::floor(iv.a / h)) - 1;
    while (k * h <= iv.a) ++k;  // first lattice point strictly inside
    int count = 0;
    for (; k * h < iv.b; ++k) {
      const double x = k * h;
      if (!(x > iv.a)) continue;  // guards rounding at the left endpoint
      grid.nodes.push_back({k, x, static_cast<int>(j)});
      ++count;
    }
    if (count < 3)
      throw ResolutionError("interval " + interval_str(iv) +
                            " holds fewer than 3 interior lattice nodes");
  }
  grid.ordinal.reserve(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    grid.ordinal.emplace(grid.nodes[i].k, static_cast<int>(i));
  return grid;
}

Grid component_restriction(const Grid& grid, int component) {
  if (component < 0 || component >= grid.component_count())
    throw std::out_of_range("component index " + std::to_string(component) +
                            " out of range");
  Domain d;
  d.intervals = {grid.domain.intervals[static_cast<std::size_t>(component)]};
  // Same spacing, same global lattice: rebuilding reproduces exactly the
  // parent nodes of this component.
  Grid sub;
  sub.domain = d;
  sub.h = grid.h;
  for (const auto& node : grid.nodes)
    if (node.component == component) sub.nodes.push_back({node.k, node.x, 0});
  sub.ordinal.reserve(sub.nodes.size());
  for (std::size_t i = 0; i < sub.nodes.size(); ++i)
    sub.ordinal.emplace(sub.nodes[i].k, static_cast<int>(i));
  return sub;
}

}  // namespace mixspec
