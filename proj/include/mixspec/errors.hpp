#pragma once

#include <stdexcept>
#include <string>

namespace mixspec {

// Violation of the structural condition on a signed order measure: the
// positive part must carry mass at or above the split order s_bar while the
// negative part must live strictly below it.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lattice spacing too coarse for a domain component or an inter-component gap.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factorization or eigensolve failed to meet its contract (indefinite
// matrix, residual above tolerance, nonpositive leading eigenvalue).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed run configuration; `pointer` is the JSON pointer of the bad field.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& where, const std::string& msg)
      : std::runtime_error(where + ": " + msg), pointer(where) {}
  std::string pointer;
};

}  // namespace mixspec
