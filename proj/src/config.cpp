#include "mixspec/config.hpp"

#include <fstream>
#include <functional>
#include <utility>

#include "mixspec/errors.hpp"

namespace mixspec {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(ptr + "/" + key, "missing field");
  return *it;
}

const json* optional_member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw ConfigError(ptr, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ConfigError(ptr, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty())
    throw ConfigError(ptr, "expected a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], ptr + "/" + std::to_string(i)));
  return out;
}

double number_field(const json& j, const char* key, const std::string& ptr) {
  return as_number(member(j, key, ptr), ptr + "/" + key);
}

double number_or(const json& j, const char* key, const std::string& ptr,
                 double fallback) {
  const json* f = optional_member(j, key);
  return f ? as_number(*f, ptr + "/" + key) : fallback;
}

int int_or(const json& j, const char* key, const std::string& ptr, int fallback) {
  const json* f = optional_member(j, key);
  return f ? as_int(*f, ptr + "/" + key) : fallback;
}

Domain parse_domain(const json& j, const std::string& ptr) {
  const json& arr = member(j, "intervals", ptr);
  const std::string aptr = ptr + "/intervals";
  if (!arr.is_array() || arr.empty())
    throw ConfigError(aptr, "expected a nonempty array of [a,b] pairs");
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string iptr = aptr + "/" + std::to_string(i);
    if (!arr[i].is_array() || arr[i].size() != 2)
      throw ConfigError(iptr, "expected an [a,b] pair");
    ivs.push_back({as_number(arr[i][0], iptr + "/0"),
                   as_number(arr[i][1], iptr + "/1")});
  }
  try {
    return make_domain(std::move(ivs));
  } catch (const std::domain_error& e) {
    throw ConfigError(aptr, e.what());
  }
}

double parse_grid_h(const json& j, const std::string& ptr) {
  if (const json* f = optional_member(j, "h")) {
    const double h = as_number(*f, ptr + "/h");
    if (!(h > 0.0)) throw ConfigError(ptr + "/h", "spacing must be positive");
    return h;
  }
  if (const json* f = optional_member(j, "n_per_unit")) {
    const int n = as_int(*f, ptr + "/n_per_unit");
    if (n < 1) throw ConfigError(ptr + "/n_per_unit", "must be a positive integer");
    return 1.0 / n;
  }
  throw ConfigError(ptr, "needs either \"h\" or \"n_per_unit\"");
}

std::vector<MeasureAtom> parse_atom_array(const json& j, const std::string& ptr) {
  std::vector<MeasureAtom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string iptr = ptr + "/" + std::to_string(i);
    atoms.push_back({number_field(j[i], "s", iptr), number_field(j[i], "w", iptr)});
  }
  try {
    return normalize_atoms(std::move(atoms));
  } catch (const std::domain_error& e) {
    throw ConfigError(ptr, e.what());
  }
}

std::vector<MeasureAtom> parse_measure_part(const json& j, MeasurePart part,
                                            const std::string& ptr) {
  if (j.is_array()) return parse_atom_array(j, ptr);
  if (!j.is_object())
    throw ConfigError(ptr, "expected an atom array or a density object");

  const std::string kind = as_string(member(j, "density", ptr), ptr + "/density");
  std::function<double(double)> density;
  if (kind == "const")
    density = [](double) { return 1.0; };
  else if (kind == "linear")
    density = [](double s) { return 2.0 * s; };
  else
    throw ConfigError(ptr + "/density", "unknown density \"" + kind + "\"");

  const json& support = member(j, "support", ptr);
  const std::string sptr = ptr + "/support";
  if (!support.is_array() || support.size() != 2)
    throw ConfigError(sptr, "expected an [a,b] pair");
  const double a = as_number(support[0], sptr + "/0");
  const double b = as_number(support[1], sptr + "/1");
  const int n_quad = as_int(member(j, "n_quad", ptr), ptr + "/n_quad");
  const double weight = number_or(j, "weight", ptr, 1.0);
  if (!(weight > 0.0)) throw ConfigError(ptr + "/weight", "must be positive");

  try {
    SignedMeasure m = from_density(density, a, b, n_quad, part);
    auto& atoms = part == MeasurePart::plus ? m.plus : m.minus;
    for (auto& atom : atoms) atom.weight *= weight;
    return atoms;
  } catch (const std::domain_error& e) {
    throw ConfigError(ptr, e.what());
  }
}

SignedMeasure parse_measure(const json& j, const std::string& ptr) {
  SignedMeasure plus_part, minus_part;
  plus_part.plus =
      parse_measure_part(member(j, "plus", ptr), MeasurePart::plus, ptr + "/plus");
  minus_part.minus = parse_measure_part(member(j, "minus", ptr),
                                        MeasurePart::minus, ptr + "/minus");
  const double s_bar = number_field(j, "s_bar", ptr);
  try {
    return combine(plus_part, minus_part, s_bar);
  } catch (const StructuralError& e) {
    throw ConfigError(ptr, e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(ptr, e.what());
  }
}

std::vector<std::pair<double, double>> parse_pair_list(const json& j,
                                                       const std::string& ptr) {
  if (!j.is_array() || j.empty())
    throw ConfigError(ptr, "expected a nonempty array of [s1,s2] pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string iptr = ptr + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 2)
      throw ConfigError(iptr, "expected an [s1,s2] pair");
    out.emplace_back(as_number(j[i][0], iptr + "/0"),
                     as_number(j[i][1], iptr + "/1"));
  }
  return out;
}

std::uint64_t parse_seed(const json& j) {
  const json* f = optional_member(j, "seed");
  if (!f) return 0;
  if (!f->is_number_unsigned() && !f->is_number_integer())
    throw ConfigError("/seed", "expected a nonnegative integer");
  return f->get<std::uint64_t>();
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  cfg.domain = parse_domain(member(j, "domain", ""), "/domain");
  cfg.h = parse_grid_h(member(j, "grid", ""), "/grid");
  cfg.measure = parse_measure(member(j, "measure", ""), "/measure");
  if (const json* solve = optional_member(j, "solve")) {
    cfg.k = int_or(*solve, "k", "/solve", 2);
    cfg.tol = number_or(*solve, "tol", "/solve", 1e-8);
    if (cfg.k < 1) throw ConfigError("/solve/k", "must be >= 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("/solve/tol", "must be positive");
  }
  cfg.seed = parse_seed(j);
  return cfg;
}

SweepSpec parse_sweep_spec(const json& j) {
  const json& sw = member(j, "sweep", "");
  SweepSpec spec;
  spec.axis = as_string(member(sw, "axis", "/sweep"), "/sweep/axis");
  if (spec.axis != "s_minus" && spec.axis != "eps" && spec.axis != "h")
    throw ConfigError("/sweep/axis", "must be \"s_minus\", \"eps\" or \"h\"");
  spec.values = as_number_list(member(sw, "values", "/sweep"), "/sweep/values");
  return spec;
}

nlohmann::json apply_sweep_value(const json& base, const std::string& axis,
                                 double value) {
  json cfg = base;
  cfg.erase("sweep");
  if (axis == "h") {
    cfg["grid"] = {{"h", value}};
  } else {  // s_minus / eps: single minus atom at the swept order
    cfg["measure"]["minus"] = json::array({{{"s", value}, {"w", 1.0}}});
  }
  return cfg;
}

ExperimentReport run_preset(const json& preset) {
  const json& exp = member(preset, "experiment", "");
  const std::string ptr = "/experiment";
  const std::string kind = as_string(member(exp, "kind", ptr), ptr + "/kind");
  const std::uint64_t seed = parse_seed(preset);

  const Domain domain = parse_domain(member(exp, "domain", ptr), ptr + "/domain");
  const json* grid_spec = optional_member(exp, "grid");

  auto grid_h = [&]() -> double {
    if (!grid_spec) throw ConfigError(ptr, "missing field \"grid\"");
    return parse_grid_h(*grid_spec, ptr + "/grid");
  };

  ExperimentReport report;
  if (kind == "localization") {
    std::vector<MeasureAtom> plus = {{1.0, 1.0}};
    if (const json* p = optional_member(exp, "plus"))
      plus = parse_atom_array(*p, ptr + "/plus");
    const auto eps = as_number_list(member(exp, "eps_list", ptr), ptr + "/eps_list");
    const double mass0 = number_or(exp, "mass_at_zero", ptr, 0.0);
    const double tol_lambda = number_or(exp, "tol_lambda", ptr, 0.05);
    const double tol_vector = number_or(exp, "tol_vector", ptr, 0.05);
    std::string name = "localization";
    if (const json* n = optional_member(exp, "name"))
      name = as_string(*n, ptr + "/name");
    report = localization_sweep(domain, plus, eps, grid_h(), tol_lambda,
                                tol_vector, mass0, name);
  } else if (kind == "simplicity_positivity") {
    report = simplicity_positivity_check(
        domain, number_field(exp, "s_minus", ptr), grid_h(),
        number_or(exp, "gap_threshold", ptr, 1e-3),
        number_or(exp, "sign_threshold", ptr, 1e-6));
  } else if (kind == "sign_change") {
    report = sign_change_check(
        domain, as_number_list(member(exp, "s_list", ptr), ptr + "/s_list"),
        grid_h(), number_or(exp, "sign_threshold", ptr, 1e-6));
  } else if (kind == "union_inequality") {
    report = union_inequality_check(
        domain, number_field(exp, "s_minus", ptr), grid_h(),
        number_or(exp, "margin_factor", ptr, 100.0),
        int_or(exp, "theta_points", ptr, 91),
        number_or(exp, "contrast_tol", ptr, 1e-12));
  } else if (kind == "simplicity_scan") {
    report = simplicity_scan(
        as_string(member(exp, "name", ptr), ptr + "/name"), domain,
        as_number_list(member(exp, "s_list", ptr), ptr + "/s_list"), grid_h(),
        as_string(member(exp, "expect", ptr), ptr + "/expect"),
        number_or(exp, "gap_floor", ptr, 5e-2),
        number_or(exp, "degenerate_ceiling", ptr, 5e-2));
  } else if (kind == "classical_limit") {
    report = classical_limit_oracle(
        as_string(member(exp, "name", ptr), ptr + "/name"), domain, grid_h(),
        number_or(exp, "eq_tol", ptr, 1e-12),
        number_or(exp, "angle_tol", ptr, 1e-6),
        number_or(exp, "degenerate_tol", ptr, 1e-10),
        number_or(exp, "gap_threshold", ptr, 1e-3));
  } else if (kind == "seminorm_bounds") {
    report = seminorm_lemma_checks(
        domain, as_number_list(member(exp, "h_list", ptr), ptr + "/h_list"),
        parse_pair_list(member(exp, "s_pairs", ptr), ptr + "/s_pairs"),
        as_number_list(member(exp, "eps_list", ptr), ptr + "/eps_list"),
        int_or(exp, "n_probes", ptr, 200), int_or(exp, "modes", ptr, 8), seed,
        number_or(exp, "ratio_lo", ptr, 0.8),
        number_or(exp, "ratio_hi", ptr, 1.25),
        number_or(exp, "defect_tol", ptr, 1e-2));
  } else if (kind == "boundary_growth") {
    report = boundary_growth_check(domain, number_field(exp, "s_minus", ptr),
                                   grid_h(),
                                   number_or(exp, "depth_fraction", ptr, 0.1),
                                   number_or(exp, "slope_floor_rel", ptr, 0.05),
                                   number_or(exp, "sign_threshold", ptr, 1e-6));
  } else {
    throw ConfigError(ptr + "/kind", "unknown experiment \"" + kind + "\"");
  }

  report.parameters = preset;
  report.seed = seed;
  return report;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("JSON parse error in ") + path + ": " + e.what());
  }
}

}  // namespace mixspec
