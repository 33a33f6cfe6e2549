#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vmom/scenario.hpp"

using namespace vmom;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "vmom_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI with `args`, capturing stdout+stderr; returns the exit code.
int run_cli(const std::string& args, const fs::path& capture) {
  const std::string cmd =
      std::string(VMOM_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

/// Parses a CSV file into rows of cells (no quoting in our outputs).
std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

const std::string kPairScenario = R"({
  "order": 2,
  "core": {"lambda0": 0.5, "nu": 0.01},
  "vortices": [
    {"mass": 1.0, "center": [-0.75, 0.0], "moments": [[2, 0, 0.05]]},
    {"mass": 1.0, "center": [0.75, 0.0]}
  ],
  "integrator": {"dt": 0.02, "t_final": 0.2, "sample_every": 5}
})";

}  // namespace

TEST_CASE("the built-in template is a valid, commented scenario") {
  const std::string text = scenario_template();
  CHECK(text.find("//") != std::string::npos);
  const Scenario s = parse_scenario(text, "template");
  validate_scenario(s);
  CHECK(s.order == 2);
  CHECK(s.vortices.size() == 2);
}

TEST_CASE("parse errors name the offending construct") {
  CHECK_THROWS_WITH_AS(parse_scenario("{ not json", "x"),
                       doctest::Contains("not valid JSON"), config_error);
  CHECK_THROWS_WITH_AS(parse_scenario("[1, 2]", "x"),
                       doctest::Contains("must contain a JSON object"),
                       config_error);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"order": 1, "cores": {}})", "x"),
      doctest::Contains("unknown field"), config_error);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"order": 1, "vortices": []})", "x"),
      doctest::Contains("non-empty array"), config_error);
}

TEST_CASE("validation errors name the offending field") {
  Scenario s = parse_scenario(kPairScenario, "test");
  validate_scenario(s);  // the baseline is fine

  Scenario bad = s;
  bad.vortices[0].mass = 0.0;
  CHECK_THROWS_WITH_AS(validate_scenario(bad),
                       doctest::Contains("vortices[0].mass"), config_error);

  bad = s;
  bad.dt = -1.0;
  CHECK_THROWS_WITH_AS(validate_scenario(bad),
                       doctest::Contains("integrator.dt"), config_error);

  bad = s;
  bad.vortices[1].moments.push_back({1, 2, 0.1});  // degree 3 > order 2
  CHECK_THROWS_WITH_AS(validate_scenario(bad),
                       doctest::Contains("exceeds order"), config_error);

  bad = s;
  bad.vortices[0].lambda0 = 0.4;  // per-vortex width needs order 0
  CHECK_THROWS_WITH_AS(validate_scenario(bad),
                       doctest::Contains("vortices[0].lambda0"), config_error);

  bad = s;
  bad.vortices[0].moments.push_back({2, 0, 0.2});
  CHECK_THROWS_WITH_AS(validate_scenario(bad), doctest::Contains("duplicates"),
                       config_error);

  bad = s;
  bad.vortices[0].moments.push_back({0, 0, 0.2});
  CHECK_THROWS_WITH_AS(validate_scenario(bad),
                       doctest::Contains("via `mass`"), config_error);

  bad = s;
  bad.order = 9;
  CHECK_THROWS_WITH_AS(validate_scenario(bad), doctest::Contains("at most 8"),
                       config_error);
}

TEST_CASE("the initial state places moment entries at their table ranks") {
  const Scenario s = parse_scenario(kPairScenario, "test");
  const SystemState st = initial_state(s);
  REQUIRE(st.vortices.size() == 2);
  CHECK(st.order == 2);
  CHECK(st.core.lambda0 == 0.5);
  CHECK(st.vortices[0].center[0] == -0.75);
  CHECK(st.vortices[0].center[1] == 0.0);
  CHECK(st.vortices[0].moments[0] == 1.0);

  const MultiIndexTable& table = moment_table(2);
  int k20[2] = {2, 0};
  CHECK(st.vortices[0].moments[table.rank(k20)] == 0.05);
  CHECK(st.vortices[1].moments.cwiseAbs().sum() == 1.0);  // mass only
}

TEST_CASE("equal scenarios produce byte-identical manifests") {
  const Scenario a = parse_scenario(kPairScenario, "a");
  // same content, different formatting and an explicit default
  std::string rearranged = kPairScenario;
  rearranged.insert(rearranged.find_last_of('}'), ",\n  \"model\": {}\n");
  const Scenario b = parse_scenario(rearranged, "b");

  const std::string ma = manifest_json(a, "1.2.3");
  const std::string mb = manifest_json(b, "1.2.3");
  CHECK(ma == mb);
  CHECK(ma.find("\"1.2.3\"") != std::string::npos);
  CHECK(ma.back() == '\n');
}

TEST_CASE("a run manifest re-runs as the scenario it records") {
  const Scenario a = parse_scenario(kPairScenario, "a");
  const std::string manifest = manifest_json(a, "0.0.0");
  const Scenario b = parse_scenario(manifest, "manifest");
  CHECK(manifest_json(b, "0.0.0") == manifest);
}

TEST_CASE("cli: help and argument errors use the documented exit codes") {
  const fs::path dir = scratch_dir();
  CHECK(run_cli("--help", dir / "help.txt") == 0);
  CHECK(read_file(dir / "help.txt").find("simulate") != std::string::npos);

  // a required flag is missing: exit code 2 (configuration error)
  CHECK(run_cli("simulate", dir / "noconfig.txt") == 2);
}

TEST_CASE("cli: template output round-trips through the parser") {
  const fs::path dir = scratch_dir();
  CHECK(run_cli("template", dir / "tpl_stdout.json") == 0);
  const Scenario s = parse_scenario(read_file(dir / "tpl_stdout.json"), "t");
  validate_scenario(s);

  CHECK(run_cli("template --output " + (dir / "tpl_file.json").string(),
                dir / "tpl_file.log") == 0);
  CHECK(read_file(dir / "tpl_file.json") == read_file(dir / "tpl_stdout.json"));
}

TEST_CASE("cli: simulate writes its outputs and reruns byte-identically") {
  const fs::path dir = scratch_dir();
  write_file(dir / "pair.json", kPairScenario);

  const std::string base = "simulate --quiet --config " + (dir / "pair.json").string();
  CHECK(run_cli(base + " --output-dir " + (dir / "run1").string(),
                dir / "run1.log") == 0);
  CHECK(run_cli(base + " --output-dir " + (dir / "run2").string(),
                dir / "run2.log") == 0);

  // The manifest records the resolved output directory, so it is compared
  // only through the re-run below; the data files must match byte for byte.
  for (const char* name : {"trajectory.csv", "moments.csv", "diagnostics.csv"}) {
    const std::string r1 = read_file(dir / "run1" / name);
    CHECK(!r1.empty());
    CHECK(r1 == read_file(dir / "run2" / name));
  }
  CHECK(!read_file(dir / "run1" / "manifest.json").empty());

  // the trajectory has a header plus samples at t = 0, 0.1, 0.2
  const auto rows = read_csv(dir / "run1" / "trajectory.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "t");
  CHECK(rows[1][0] == "0");
  CHECK(std::stod(rows[3][0]) == doctest::Approx(0.2));

  // the emitted manifest re-runs to byte-identical outputs
  CHECK(run_cli("simulate --quiet --config " +
                    (dir / "run1" / "manifest.json").string() +
                    " --output-dir " + (dir / "run3").string(),
                dir / "run3.log") == 0);
  CHECK(read_file(dir / "run1" / "trajectory.csv") ==
        read_file(dir / "run3" / "trajectory.csv"));
}

TEST_CASE("cli: flag overrides are applied and recorded in the manifest") {
  const fs::path dir = scratch_dir();
  write_file(dir / "pair_o.json", kPairScenario);
  CHECK(run_cli("simulate --quiet --order 4 --T 0.1 --config " +
                    (dir / "pair_o.json").string() + " --output-dir " +
                    (dir / "run_o4").string(),
                dir / "run_o4.log") == 0);
  const std::string manifest = read_file(dir / "run_o4" / "manifest.json");
  CHECK(manifest.find("\"order\": 4") != std::string::npos);
  CHECK(manifest.find("\"t_final\": 0.1") != std::string::npos);
}

TEST_CASE("cli: configuration and runtime failures use exit codes 2 and 3") {
  const fs::path dir = scratch_dir();

  write_file(dir / "zero_mass.json", R"({
    "order": 1,
    "core": {"lambda0": 0.5, "nu": 0.0},
    "vortices": [{"mass": 0.0, "center": [0, 0]}]
  })");
  CHECK(run_cli("simulate --quiet --config " + (dir / "zero_mass.json").string() +
                    " --output-dir " + (dir / "zm").string(),
                dir / "zm.log") == 2);
  CHECK(read_file(dir / "zm.log").find("vortices[0].mass") != std::string::npos);

  write_file(dir / "blowup.json", R"({
    "order": 2,
    "core": {"lambda0": 1.0, "nu": 0.0},
    "vortices": [
      {"mass": 1.0, "center": [-0.5, 0.0], "moments": [[2, 0, 1e200]]},
      {"mass": 1.0, "center": [0.5, 0.0], "moments": [[2, 0, 1e200]]}
    ],
    "integrator": {"dt": 0.1, "t_final": 0.1}
  })");
  CHECK(run_cli("simulate --quiet --config " + (dir / "blowup.json").string() +
                    " --output-dir " + (dir / "bu").string(),
                dir / "bu.log") == 3);
  CHECK(read_file(dir / "bu.log").find("last finite state") != std::string::npos);
}

TEST_CASE("cli: project recovers a pure Gaussian as a bare mass") {
  const fs::path dir = scratch_dir();
  write_file(dir / "proj.json", R"({
    "order": 2,
    "core": {"lambda0": 0.8, "nu": 0.0},
    "vortices": [{"mass": 1.37, "center": [0.3, -0.2]}],
    "project": {"nodes": 32}
  })");
  CHECK(run_cli("project --quiet --config " + (dir / "proj.json").string() +
                    " --output-dir " + (dir / "proj").string(),
                dir / "proj.log") == 0);

  const auto rows = read_csv(dir / "proj" / "projection.csv");
  REQUIRE(rows.size() == 7);  // header + six moments of order <= 2
  CHECK(rows[0] == std::vector<std::string>{"k1", "k2", "value"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][2]);
    if (rows[i][0] == "0" && rows[i][1] == "0")
      CHECK(v == doctest::Approx(1.37).epsilon(1e-12));
    else
      CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("cli: compare-frequency agrees with the induction formula at t = 0") {
  const fs::path dir = scratch_dir();
  write_file(dir / "freq.json", R"({
    "order": 2,
    "core": {"lambda0": 0.5, "nu": 0.01},
    "vortices": [
      {"mass": 1.0, "center": [-1.0, 0.0]},
      {"mass": 1.0, "center": [1.0, 0.0]}
    ],
    "integrator": {"dt": 0.05, "t_final": 0.5, "sample_every": 5}
  })");
  CHECK(run_cli("compare-frequency --quiet --config " +
                    (dir / "freq.json").string() + " --output-dir " +
                    (dir / "freq").string(),
                dir / "freq.log") == 0);

  const auto rows = read_csv(dir / "freq" / "frequency.csv");
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0] ==
        std::vector<std::string>{"t", "omega_new", "omega_quadrupole",
                                 "omega_measured"});
  const double new0 = std::stod(rows[1][1]);
  const double meas0 = std::stod(rows[1][3]);
  CHECK(std::abs(meas0 - new0) < 1e-12 * std::abs(new0));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double w_new = std::stod(rows[i][1]);
    const double w_meas = std::stod(rows[i][3]);
    CHECK(std::abs(w_meas - w_new) < 0.01 * std::abs(w_new));
  }
}

TEST_CASE("cli: oracle-compare reproduces a spreading Gaussian to grid accuracy") {
  const fs::path dir = scratch_dir();
  write_file(dir / "oseen.json", R"({
    "order": 2,
    "core": {"lambda0": 1.0, "nu": 0.05},
    "vortices": [{"mass": 1.0, "center": [0.0, 0.0]}],
    "integrator": {"dt": 0.05, "t_final": 0.2, "sample_every": 1},
    "oracle": {"n": 128, "box_size": 32.0, "compare_samples": 2}
  })");
  // The oracle box must be generous: the periodic images strain the vortex
  // at O(1/box_size^4), which is the floor the 1e-6 checks sit above.
  CHECK(run_cli("oracle-compare --quiet --config " +
                    (dir / "oseen.json").string() + " --output-dir " +
                    (dir / "oracle").string(),
                dir / "oracle.log") == 0);

  const auto field = read_csv(dir / "oracle" / "field_error.csv");
  REQUIRE(field.size() >= 2);
  for (std::size_t i = 1; i < field.size(); ++i)
    CHECK(std::stod(field[i][1]) < 1e-6);  // relative L2 field error

  const auto centers = read_csv(dir / "oracle" / "centers.csv");
  REQUIRE(centers.size() >= 2);
  for (std::size_t i = 1; i < centers.size(); ++i)
    CHECK(std::stod(centers[i].back()) < 1e-9);  // center distance

  const auto moments = read_csv(dir / "oracle" / "moment_error.csv");
  REQUIRE(moments.size() >= 2);
  for (std::size_t i = 1; i < moments.size(); ++i)
    CHECK(std::abs(std::stod(moments[i].back())) < 1e-6);
}

TEST_CASE("cli: tensors writes the coefficient tables with an exact mass row") {
  const fs::path dir = scratch_dir();
  CHECK(run_cli("tensors --quiet --order 1 --s 2 0 --lambda 1 --output-dir " +
                    (dir / "tensors").string(),
                dir / "tensors.log") == 0);

  const auto gamma = read_csv(dir / "tensors" / "gamma.csv");
  REQUIRE(gamma.size() > 1);
  CHECK(gamma[0] == std::vector<std::string>{"k1", "k2", "l1", "l2", "m1", "m2",
                                             "value"});
  bool saw_mass_row = false;
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    if (gamma[i][0] == "0" && gamma[i][1] == "0") {
      saw_mass_row = true;
      CHECK(gamma[i][6] == "0");  // exact zero, no negative-zero artifacts
    }
  }
  CHECK(saw_mass_row);

  const auto xi = read_csv(dir / "tensors" / "xi.csv");
  REQUIRE(xi.size() > 1);
  CHECK(xi[0] ==
        std::vector<std::string>{"l1", "l2", "m1", "m2", "xi1", "xi2"});
}
