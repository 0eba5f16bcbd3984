#pragma once

#include <unordered_map>
#include <vector>

namespace mixspec {

// Open interval (a,b) on the real line.
struct Interval {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
};

// Finite union of open intervals with pairwise disjoint closures, kept sorted
// so that intervals[i].b < intervals[i+1].a.
struct Domain {
  std::vector<Interval> intervals;
  double total_length() const;
};

// Validates and sorts the intervals; throws std::domain_error on an empty
// list, a degenerate interval, or touching/overlapping closures.
Domain make_domain(std::vector<Interval> intervals);

// One interior lattice node: x = k*h sits strictly inside component
// `component` of the domain.
struct GridNode {
  long long k = 0;
  double x = 0.0;
  int component = 0;
};

// Uniform lattice restricted to the domain interior.  All components share
// one global lattice x = k*h, so lattice-integer differences between any two
// nodes (also across components) are exact.
struct Grid {
  Domain domain;
  double h = 0.0;
  std::vector<GridNode> nodes;                    // sorted by x ascending
  std::unordered_map<long long, int> ordinal;     // lattice index -> node slot

  int n() const { return static_cast<int>(nodes.size()); }
  // Slot of lattice index k, or -1 when k*h is exterior.
  int find_ordinal(long long k) const {
    auto it = ordinal.find(k);
    return it == ordinal.end() ? -1 : it->second;
  }
  int component_count() const { return static_cast<int>(domain.intervals.size()); }
};

// Builds the interior lattice.  Requires h > 0, every interval at least 4h
// long, every inter-component gap at least 2h wide (so the lattice resolves
// the gap and the nearest cross-component nodes sit >= 2 lattice steps
// apart), and at least 3 nodes per component.
Grid build_grid(const Domain& domain, double h);

// Grid over a single component, same spacing and same global lattice; node
// positions are exactly a subset of the parent grid's.
Grid component_restriction(const Grid& grid, int component);

}  // namespace mixspec
