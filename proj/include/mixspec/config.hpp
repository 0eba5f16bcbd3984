#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixspec/experiments.hpp"
#include "mixspec/grid.hpp"
#include "mixspec/measure.hpp"

namespace mixspec {

// One eigenvalue run: domain, lattice, signed measure, solver controls.
struct RunConfig {
  Domain domain;
  double h = 0.0;
  SignedMeasure measure;
  int k = 2;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

// Parses the solve/sweep configuration schema
//   {"domain": {"intervals": [[a,b],...]},
//    "grid": {"h": x} | {"n_per_unit": m},
//    "measure": {"plus": <part>, "minus": <part>, "s_bar": x},
//    "solve": {"k": n, "tol": x},   (optional)
//    "seed": n}                      (optional)
// where <part> is an atom array [{"s":x,"w":x},...] or a density object
// {"density":"const"|"linear", "support":[a,b], "n_quad":n, "weight":x}.
// All violations throw ConfigError carrying the JSON pointer of the field.
RunConfig parse_run_config(const nlohmann::json& j);

struct SweepSpec {
  std::string axis;  // "s_minus" | "eps" | "h"
  std::vector<double> values;
};
SweepSpec parse_sweep_spec(const nlohmann::json& j);

// Applies one sweep value to a copy of the base configuration.
nlohmann::json apply_sweep_value(const nlohmann::json& base,
                                 const std::string& axis, double value);

// Dispatches {"experiment": {"kind": ..., "name": ..., <params>}, "seed": n}
// onto the corresponding check and echoes the preset into the report.
ExperimentReport run_preset(const nlohmann::json& preset);

// Reads and parses a JSON file; throws ConfigError on I/O or syntax errors.
nlohmann::json load_json_file(const std::string& path);

}  // namespace mixspec
