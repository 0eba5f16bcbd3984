#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "mixspec/grid.hpp"

namespace mixspec {

// Deterministic random source.  The uniform/normal maps are spelled out here
// (instead of std::*_distribution, whose output is implementation-defined) so
// that a fixed seed yields the same stream on every platform.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0,1): top 53 bits of the generator output, offset by half an ulp.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// A fixed family of smooth random functions on a domain: per component,
// a random combination of the first `modes` Dirichlet sine modes.  The
// coefficients are drawn once from the seed, so the same probe evaluated on
// two lattices of different spacing samples the same continuum function.
// This keeps ratio statistics comparable across refinements.
class SmoothProbeSet {
 public:
  SmoothProbeSet(const Domain& domain, int n_probes, int modes,
                 std::uint64_t seed);

  int size() const { return n_probes_; }

  // Probe p sampled at the grid nodes; the grid must cover the same domain.
  Eigen::VectorXd evaluate(const Grid& grid, int p) const;

 private:
  Domain domain_;
  int n_probes_ = 0;
  int modes_ = 0;
  // coeffs_[p][c * modes_ + m]
  std::vector<std::vector<double>> coeffs_;
};

}  // namespace mixspec
