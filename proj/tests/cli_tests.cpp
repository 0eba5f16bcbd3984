// End-to-end tests of the mixspec binary: spawns the real executable and
// checks exit codes, output files, and reproducibility.  Invoked as
//   cli_tests <path-to-mixspec> <path-to-presets-dir>

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string g_binary;
std::string g_presets;
const fs::path kScratch = "cli_scratch";

int run(const std::string& args) {
  const std::string cmd = "\"" + g_binary + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path path = kScratch / name;
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << content;
  REQUIRE(out.good());
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

const char* kAnchorConfig = R"({
  "domain": {"intervals": [[0.0, 1.0]]},
  "grid": {"h": 0.25},
  "measure": {"plus": [{"s": 1.0, "w": 1.0}],
              "minus": [{"s": 0.0, "w": 1.0}],
              "s_bar": 1.0},
  "solve": {"k": 2},
  "seed": 1
})";

}  // namespace

TEST_CASE("solve writes the eigenpair files and hits the closed-form anchor") {
  const fs::path cfg = write_file("anchor.json", kAnchorConfig);
  const fs::path out = kScratch / "solve_out";
  CHECK(run("solve --config " + cfg.string() + " --out " + out.string()) == 0);

  const json result = json::parse(slurp(out / "eigen_result.json"));
  REQUIRE(result["lambdas"].size() == 2);
  // 3-node classical problem: lambda_1 = (2 - sqrt(2)) / h^2
  CHECK(result["lambdas"][0].get<double>() ==
        doctest::Approx(9.372583002030478).epsilon(1e-13));
  CHECK(result["residuals"][0].get<double>() <= 1e-8);

  const std::string csv = slurp(out / "eigenvectors.csv");
  CHECK(csv.rfind("x,component,v1,v2", 0) == 0);
}

TEST_CASE("solve honours the MIXSPEC_OUT environment variable") {
  const fs::path cfg = write_file("anchor.json", kAnchorConfig);
  const fs::path out = kScratch / "env_out";
  REQUIRE(setenv("MIXSPEC_OUT", out.c_str(), 1) == 0);
  const int code = run("solve --config " + cfg.string());
  REQUIRE(unsetenv("MIXSPEC_OUT") == 0);
  CHECK(code == 0);
  CHECK(fs::exists(out / "eigen_result.json"));
}

TEST_CASE("configuration errors exit with code 2") {
  const fs::path out = kScratch / "err_out";
  SUBCASE("missing file") {
    CHECK(run("solve --config " + (kScratch / "nope.json").string() +
              " --out " + out.string()) == 2);
  }
  SUBCASE("malformed JSON") {
    const fs::path cfg = write_file("broken.json", "{ not json ");
    CHECK(run("solve --config " + cfg.string() + " --out " + out.string()) == 2);
  }
  SUBCASE("more eigenpairs than unknowns") {
    json cfg = json::parse(kAnchorConfig);
    cfg["solve"]["k"] = 99;
    const fs::path path = write_file("too_many.json", cfg.dump());
    CHECK(run("solve --config " + path.string() + " --out " + out.string()) == 2);
  }
  SUBCASE("measure violating the structural condition") {
    json cfg = json::parse(kAnchorConfig);
    cfg["measure"]["minus"] = json::array({{{"s", 1.0}, {"w", 1.0}}});
    const fs::path path = write_file("unsolvable.json", cfg.dump());
    CHECK(run("solve --config " + path.string() + " --out " + out.string()) == 2);
  }
  SUBCASE("lattice too coarse for the domain") {
    json cfg = json::parse(kAnchorConfig);
    cfg["grid"]["h"] = 0.4;
    const fs::path path = write_file("coarse.json", cfg.dump());
    CHECK(run("solve --config " + path.string() + " --out " + out.string()) == 2);
  }
  SUBCASE("missing subcommand arguments") {
    CHECK(run("solve") == 2);
    CHECK(run("verify --out " + out.string()) == 2);
  }
}

TEST_CASE("verify runs a single preset and reports its verdict") {
  const fs::path preset = write_file("quick_check.json", R"({
    "experiment": {
      "kind": "simplicity_positivity",
      "domain": {"intervals": [[0.0, 1.0]]},
      "grid": {"h": 0.03125},
      "s_minus": 0.3,
      "gap_threshold": 1e-3,
      "sign_threshold": 1e-6
    },
    "seed": 7
  })");
  const fs::path out = kScratch / "verify_out";
  CHECK(run("verify --config " + preset.string() + " --out " + out.string()) == 0);
  const json report = json::parse(slurp(out / "simplicity_positivity.report.json"));
  CHECK(report["verdict"] == "pass");
  CHECK(report["finding"] == "simple_and_one_signed");
  CHECK(fs::exists(out / "simplicity_positivity.sweep.csv"));
}

TEST_CASE("verify --only selects presets by name from the shipped directory") {
  const fs::path out = kScratch / "only_out";
  CHECK(run("verify --only boundary_growth --presets " + g_presets + " --out " +
            out.string()) == 0);
  CHECK(fs::exists(out / "boundary_growth.report.json"));
  CHECK(run("verify --only no_such_check --presets " + g_presets + " --out " +
            out.string()) == 2);
}

TEST_CASE("sweep writes one CSV row per value, identically across thread counts") {
  json cfg = json::parse(kAnchorConfig);
  cfg["grid"]["h"] = 0.0625;
  cfg["sweep"] = {{"axis", "s_minus"},
                  {"values", {0.1, 0.3, 0.5}}};
  const fs::path path = write_file("sweep.json", cfg.dump());
  const fs::path out1 = kScratch / "sweep_serial";
  const fs::path out2 = kScratch / "sweep_threaded";
  CHECK(run("sweep --config " + path.string() + " --out " + out1.string()) == 0);
  CHECK(run("sweep --config " + path.string() + " --out " + out2.string() +
            " --threads 3") == 0);

  const std::string serial = slurp(out1 / "sweep.csv");
  CHECK(serial == slurp(out2 / "sweep.csv"));
  CHECK(std::count(serial.begin(), serial.end(), '\n') == 4);  // header + 3 rows
  CHECK(serial.rfind("parameter,", 0) == 0);
}

TEST_CASE("sweep rejects an unknown axis") {
  json cfg = json::parse(kAnchorConfig);
  cfg["sweep"] = {{"axis", "bogus"}, {"values", {0.1}}};
  const fs::path path = write_file("bad_axis.json", cfg.dump());
  CHECK(run("sweep --config " + path.string() + " --out " +
            (kScratch / "bad_axis_out").string()) == 2);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <mixspec-binary> <presets-dir>\n");
    return 2;
  }
  g_binary = argv[argc - 2];
  g_presets = argv[argc - 1];
  std::error_code ec;
  fs::remove_all(kScratch, ec);

  doctest::Context context;
  context.applyCommandLine(argc - 2, argv);
  return context.run();
}
