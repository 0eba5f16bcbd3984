// mixspec — spectral experiment runner for mixed-order nonlocal pencils.
//
// Subcommands:
//   solve   one eigenvalue run from a JSON config
//   verify  run experiment presets and report pass/fail per check
//   sweep   one-parameter family of solves, CSV output
//
// Exit codes: 0 success, 1 check failure, 2 config error, 3 numerical
// failure, 4 inconclusive.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixspec/config.hpp"
#include "mixspec/eigensolver.hpp"
#include "mixspec/errors.hpp"
#include "mixspec/experiments.hpp"
#include "mixspec/report_io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

std::string resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MIXSPEC_OUT"); env && *env) return env;
  return "out";
}

struct SolveArgs {
  std::string config;
  std::string out;
  long long seed = -1;
};

int cmd_solve(const SolveArgs& args) {
  json cfg_json = mixspec::load_json_file(args.config);
  if (args.seed >= 0) cfg_json["seed"] = static_cast<std::uint64_t>(args.seed);
  const mixspec::RunConfig cfg = mixspec::parse_run_config(cfg_json);

  const mixspec::Grid grid = mixspec::build_grid(cfg.domain, cfg.h);
  const mixspec::Pencil pencil = mixspec::build_pencil(grid, cfg.measure);
  const mixspec::EigenResult result =
      mixspec::smallest_eigenpairs(pencil, cfg.k, cfg.tol);

  json out = mixspec::eigen_result_to_json(result);
  out["n"] = grid.n();
  out["h"] = grid.h;
  out["seed"] = cfg.seed;
  out["parameters"] = cfg_json;

  const std::string dir = resolve_out(args.out);
  mixspec::atomic_write(dir + "/eigen_result.json", out.dump(2) + "\n");
  mixspec::atomic_write(dir + "/eigenvectors.csv",
                        mixspec::vectors_to_csv(grid, result));
  std::cout << "lambda1=" << mixspec::format_double(result.lambdas[0])
            << " gap=" << mixspec::format_double(result.gap)
            << " n=" << grid.n() << "\n"
            << "wrote " << dir << "/eigen_result.json\n";
  return kExitPass;
}

struct VerifyArgs {
  std::string config;
  std::string presets_dir = "presets";
  std::string only;
  std::string out;
  bool all = false;
  long long seed = -1;
};

int cmd_verify(const VerifyArgs& args) {
  std::vector<std::string> files;
  if (!args.config.empty()) {
    files.push_back(args.config);
  } else if (args.all || !args.only.empty()) {
    if (!fs::is_directory(args.presets_dir))
      throw mixspec::ConfigError("", "presets directory " + args.presets_dir +
                                         " does not exist");
    for (const auto& entry : fs::directory_iterator(args.presets_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
  } else {
    throw mixspec::ConfigError("", "verify needs --config FILE or --all");
  }
  if (files.empty())
    throw mixspec::ConfigError("", "no experiment presets found");

  const std::string dir = resolve_out(args.out);
  bool any_fail = false;
  bool any_inconclusive = false;
  bool matched = false;
  for (const auto& file : files) {
    json preset = mixspec::load_json_file(file);
    if (!args.only.empty()) {
      const auto& exp = preset.contains("experiment") ? preset["experiment"] : json();
      std::string name = exp.contains("name") ? exp["name"].get<std::string>()
                                              : std::string();
      if (name.empty() && exp.contains("kind"))
        name = exp["kind"].get<std::string>();
      if (name != args.only) continue;
    }
    matched = true;
    if (args.seed >= 0) preset["seed"] = static_cast<std::uint64_t>(args.seed);

    const mixspec::ExperimentReport report = mixspec::run_preset(preset);
    mixspec::atomic_write(dir + "/" + report.name + ".report.json",
                          mixspec::report_to_json(report).dump(2) + "\n");
    if (!report.sweep.empty())
      mixspec::atomic_write(dir + "/" + report.name + ".sweep.csv",
                            mixspec::sweep_to_csv(report.sweep));
    std::cout << report.name << ": " << mixspec::to_string(report.verdict)
              << " (" << report.finding << ")\n";
    any_fail = any_fail || report.verdict == mixspec::Verdict::fail;
    any_inconclusive =
        any_inconclusive || report.verdict == mixspec::Verdict::inconclusive;
  }
  if (!matched)
    throw mixspec::ConfigError("", "no preset matches --only " + args.only);
  if (any_fail) return kExitCheckFailed;
  if (any_inconclusive) return kExitInconclusive;
  return kExitPass;
}

struct SweepArgs {
  std::string config;
  std::string out;
  long long seed = -1;
  int threads = 1;
};

int cmd_sweep(const SweepArgs& args) {
  json base = mixspec::load_json_file(args.config);
  if (args.seed >= 0) base["seed"] = static_cast<std::uint64_t>(args.seed);
  const mixspec::SweepSpec spec = mixspec::parse_sweep_spec(base);
  const int threads = std::max(1, args.threads);

  // Every point is an independent pure solve; rows land in declared order.
  std::vector<mixspec::SweepRow> rows(spec.values.size());
  std::vector<std::exception_ptr> errors(spec.values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < spec.values.size();
         i = next.fetch_add(1)) {
      try {
        const json cfg_json =
            mixspec::apply_sweep_value(base, spec.axis, spec.values[i]);
        const mixspec::RunConfig cfg = mixspec::parse_run_config(cfg_json);
        const mixspec::Grid grid = mixspec::build_grid(cfg.domain, cfg.h);
        const mixspec::Pencil pencil = mixspec::build_pencil(grid, cfg.measure);
        const mixspec::EigenResult r = mixspec::smallest_eigenpairs(
            pencil, std::max(cfg.k, 2), cfg.tol);
        rows[i] = {spec.values[i],        r.lambdas[0],
                   r.lambdas[1],          r.gap,
                   r.residuals[0],        r.sign_profile[0].first,
                   r.sign_profile[0].second};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1 || spec.values.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int use = std::min<int>(threads, static_cast<int>(spec.values.size()));
    pool.reserve(static_cast<std::size_t>(use));
    for (int t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  const std::string dir = resolve_out(args.out);
  mixspec::atomic_write(dir + "/sweep.csv", mixspec::sweep_to_csv(rows));
  std::cout << "wrote " << dir << "/sweep.csv (" << rows.size() << " points)\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed-order nonlocal spectral experiment runner"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run one eigenvalue problem");
  solve->add_option("--config", solve_args.config, "JSON run configuration")
      ->required();
  solve->add_option("--out", solve_args.out, "output directory (default ./out)");
  solve->add_option("--seed", solve_args.seed, "override the config seed");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run experiment checks");
  verify->add_option("--config", verify_args.config, "single experiment preset");
  verify->add_flag("--all", verify_args.all, "run every preset in --presets");
  verify->add_option("--only", verify_args.only, "run the preset with this name");
  verify->add_option("--presets", verify_args.presets_dir,
                     "preset directory (default ./presets)");
  verify->add_option("--out", verify_args.out, "output directory (default ./out)");
  verify->add_option("--seed", verify_args.seed, "override preset seeds");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "run a one-parameter sweep");
  sweep->add_option("--config", sweep_args.config, "JSON sweep configuration")
      ->required();
  sweep->add_option("--out", sweep_args.out, "output directory (default ./out)");
  sweep->add_option("--seed", sweep_args.seed, "override the config seed");
  sweep->add_option("--threads", sweep_args.threads, "worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    return cmd_sweep(sweep_args);
  } catch (const mixspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mixspec::StructuralError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mixspec::ResolutionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mixspec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
