// test_experiment.cpp — config parsing with aggregated diagnostics, task
// validation rules, presets, and end-to-end runs with deterministic CSV and
// JSON sidecar outputs.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscamp/experiment.hpp"
#include "oscamp/su2.hpp"

using namespace oscamp;
namespace fs = std::filesystem;

namespace {

// Unique scratch directory per call so concurrently running binaries never
// collide; removed by the caller via ScratchDir's destructor.
struct ScratchDir {
  fs::path path;

  ScratchDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream name;
    name << "oscamp_test_" << std::hex << rng();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::strtod(field.c_str(), nullptr));
  return out;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("a minimal config gets documented defaults") {
  const auto cfg = parse_config(R"({"task": "propagator"})");
  CHECK(cfg.model == ModelKind::Amplifier);
  CHECK(cfg.task == Task::Propagator);
  CHECK(cfg.scenario.holds<Constant>());
  CHECK(cfg.grid.t_start == 0.0);
  CHECK(cfg.grid.t_end == 10.0);
  CHECK(cfg.grid.n == 101);
  CHECK(cfg.N == 1);
  CHECK(cfg.output_path == "out.csv");
  CHECK(cfg.tolerance == 1e-10);
  CHECK(!cfg.noon.has_value());
  CHECK(validate(cfg).empty());
}

TEST_CASE("a fully specified config parses field by field") {
  const char* text = R"({
    "model": "standard",
    "task": "transition",
    "scenario": {"type": "lmsz", "gamma": 2.0, "omega0": 0.5,
                 "tau_i": -15.0, "tau_f": 15.0},
    "grid": {"t_start": -10.0, "t_end": 10.0, "n": 41},
    "N": 3,
    "output_path": "sweep.csv",
    "tolerance": 1e-11
  })";
  const auto cfg = parse_config(text);
  CHECK(cfg.model == ModelKind::Standard);
  CHECK(cfg.task == Task::Transition);
  REQUIRE(cfg.scenario.holds<Lmsz>());
  CHECK(cfg.scenario.get<Lmsz>().gamma == 2.0);
  CHECK(cfg.scenario.get<Lmsz>().tau_i == -15.0);
  CHECK(cfg.grid.n == 41);
  CHECK(cfg.N == 3);
  CHECK(cfg.output_path == "sweep.csv");
  CHECK(cfg.tolerance == 1e-11);
  CHECK(validate(cfg).empty());
}

TEST_CASE("tabulated scenarios parse re/im sample pairs") {
  const char* text = R"({
    "task": "propagator",
    "scenario": {"type": "tabulated",
                 "t": [0.0, 1.0, 2.0],
                 "Omega": [1.0, 0.5, 0.0],
                 "omega": [[0.1, 0.0], [0.0, 0.2], [0.1, -0.1]]},
    "grid": {"t_start": 0.0, "t_end": 2.0, "n": 5}
  })";
  const auto cfg = parse_config(text);
  REQUIRE(cfg.scenario.holds<Tabulated>());
  const auto& tab = cfg.scenario.get<Tabulated>();
  REQUIRE(tab.t.size() == 3);
  CHECK(tab.omega[1] == Complex{0.0, 0.2});
  CHECK(validate(cfg).empty());
}

TEST_CASE("every structural problem in a bad config is reported at once") {
  const char* text = R"({
    "model": "tripler",
    "task": "energy",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": -0.1},
    "grid": {"t_start": 0.0, "t_end": 10.0, "n": 0},
    "N": 0,
    "turbo": true
  })";
  std::string message;
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    message = e.what();
  }
  REQUIRE(!message.empty());
  CHECK(message.find("model:") != std::string::npos);
  CHECK(message.find("omega0") != std::string::npos);
  CHECK(message.find("turbo") != std::string::npos);  // unknown keys named
}

TEST_CASE("task-level problems aggregate once the structure is clean") {
  // Structurally valid JSON whose values break three run preconditions:
  // the parse's validate pass reports them together.
  const char* text = R"({
    "model": "amplifier",
    "task": "energy",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "grid": {"t_start": 0.0, "t_end": 10.0, "n": 0},
    "N": 0
  })";
  std::string message;
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    message = e.what();
  }
  REQUIRE(!message.empty());
  CHECK(message.find("grid.n") != std::string::npos);
  CHECK(message.find("N:") != std::string::npos);
  CHECK(message.find("noon") != std::string::npos);  // energy needs noon
}

TEST_CASE("malformed JSON is a ConfigError, not a crash") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"(["array", "not", "object"])"), ConfigError);
}

TEST_CASE("validate enforces the per-task input contracts") {
  auto base = parse_config(R"({"task": "propagator"})");

  SUBCASE("energy needs a noon block") {
    base.task = Task::Energy;
    const auto diags = validate(base);
    REQUIRE(!diags.empty());
    CHECK(diags.front().find("noon") != std::string::npos);
  }
  SUBCASE("kernel needs a kernel block") {
    base.task = Task::Kernel;
    const auto diags = validate(base);
    REQUIRE(!diags.empty());
    CHECK(diags.front().find("kernel") != std::string::npos);
  }
  SUBCASE("compare rejects tabulated scenarios") {
    base.task = Task::Compare;
    Tabulated tab;
    tab.t = {0.0, 10.0};
    tab.Omega = {1.0, 1.0};
    tab.omega = {Complex{0.1, 0.0}, Complex{0.1, 0.0}};
    base.scenario = Scenario{tab};
    bool mentioned = false;
    for (const auto& d : validate(base))
      mentioned |= d.find("closed-form drive") != std::string::npos;
    CHECK(mentioned);
  }
  SUBCASE("tolerance window matches the integrator's") {
    base.tolerance = 1e-15;
    CHECK(!validate(base).empty());
    base.tolerance = 1e-3;
    CHECK(!validate(base).empty());
  }
  SUBCASE("grids must stay inside a tabulated sample window") {
    Tabulated tab;
    tab.t = {0.0, 5.0};
    tab.Omega = {1.0, 1.0};
    tab.omega = {Complex{0.1, 0.0}, Complex{0.1, 0.0}};
    base.scenario = Scenario{tab};
    base.grid = {0.0, 9.0, 11};
    CHECK(!validate(base).empty());
    base.grid = {0.0, 5.0, 11};
    CHECK(validate(base).empty());
  }
  SUBCASE("sweep grids must not start before the sweep window") {
    base.scenario = Scenario{Lmsz{1.0, 1.0, -10.0, 10.0}};
    base.grid = {-12.0, 8.0, 11};
    CHECK(!validate(base).empty());
    base.grid = {-10.0, 8.0, 11};
    CHECK(validate(base).empty());
  }
}

TEST_CASE("presets all validate and carry their documented shapes") {
  const auto names = preset_names();
  REQUIRE(names.size() == 7);
  for (const auto& name : names) {
    const auto cfg = preset(name);
    CHECK(validate(cfg).empty());
    CHECK(cfg.output_path == name + ".csv");
  }
  const auto fig1 = preset("fig1");
  CHECK(fig1.task == Task::Energy);
  REQUIRE(fig1.theta_grid.has_value());
  CHECK(fig1.theta_grid->n == 101);
  CHECK(fig1.theta_grid->time == 10.0);
  const auto fig3b = preset("fig3b");
  CHECK(fig3b.model == ModelKind::Standard);
  CHECK(fig3b.task == Task::Transition);
  CHECK_THROWS_AS(preset("fig99"), ConfigError);
}

TEST_CASE("propagator runs write the pair trace deterministically") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "propagator",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "grid": {"t_start": 0.0, "t_end": 5.0, "n": 6},
    "output_path": "pair.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  CHECK(report.rows == 6);
  CHECK(fs::path(report.output_file).filename() == "pair.csv");
  CHECK(report.max_norm_defect <= 1e-10);

  const auto text = slurp(report.output_file);
  const auto rows = lines_of(text);
  REQUIRE(rows.size() == 7);  // header + 6 samples
  CHECK(rows[0] == "t,re_a,im_a,re_b,im_b");

  // Anchor row is the identity pair; the last row matches the closed form.
  const auto first = parse_csv_row(rows[1]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == 0.0);
  CHECK(first[1] == 1.0);
  CHECK(std::abs(first[2]) == 0.0);
  const auto last = parse_csv_row(rows[6]);
  const auto want = solve_constant(1.0, 0.1, 5.0);
  CHECK(std::abs(last[1] - want.a.real()) <= 1e-15);
  CHECK(std::abs(last[2] - want.a.imag()) <= 1e-15);
  CHECK(std::abs(last[3] - want.b.real()) <= 1e-15);
  CHECK(std::abs(last[4] - want.b.imag()) <= 1e-15);

  // Same config, fresh directory: byte-identical output.
  ScratchDir tmp2;
  const auto report2 = run(cfg, tmp2.path.string());
  CHECK(slurp(report2.output_file) == text);
}

TEST_CASE("the meta sidecar echoes a reparsable config") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "transition",
    "model": "standard",
    "scenario": {"type": "rabi", "Omega0": 1.0, "omega0": 0.1, "nu0": 0.5},
    "grid": {"t_start": 0.0, "t_end": 12.0, "n": 13},
    "N": 2,
    "output_path": "p.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  const auto meta = nlohmann::json::parse(slurp(report.meta_file));
  CHECK(meta.at("rows").get<std::size_t>() == report.rows);
  CHECK(meta.at("max_norm_defect").get<double>() == report.max_norm_defect);
  const auto columns = meta.at("columns").get<std::vector<std::string>>();
  REQUIRE(columns.size() == 2);
  CHECK(columns[0] == "t");
  CHECK(columns[1] == "p");

  // The embedded config is a complete, valid restatement of the run.
  const auto echoed = parse_config(meta.at("config").dump());
  CHECK(echoed.model == cfg.model);
  CHECK(echoed.task == cfg.task);
  CHECK(echoed.N == cfg.N);
  CHECK(echoed.grid.n == cfg.grid.n);
  REQUIRE(echoed.scenario.holds<Rabi>());
  CHECK(echoed.scenario.get<Rabi>().nu0 == 0.5);
}

TEST_CASE("energy runs sweep theta when a theta grid is present") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "energy",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "noon": {"N": 1, "theta": 0.0, "phi": 0.0},
    "theta_grid": {"theta_start": 0.0, "theta_end": 1.5707963267948966,
                   "n": 21, "time": 10.0},
    "output_path": "sweep.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  CHECK(report.rows == 21);
  const auto rows = lines_of(slurp(report.output_file));
  CHECK(rows[0] == "theta,energy");
  REQUIRE(rows.size() == 22);
  // First and last theta are the exact grid endpoints.
  CHECK(parse_csv_row(rows[1])[0] == 0.0);
  CHECK(parse_csv_row(rows[21])[0] == doctest::Approx(1.5707963267948966));
}

TEST_CASE("energy runs produce a time trace without a theta grid") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "energy",
    "scenario": {"type": "rabi", "Omega0": 1.0, "omega0": 0.1, "nu0": 1.0},
    "noon": {"N": 1, "theta": 0.7853981633974483, "phi": 0.0},
    "grid": {"t_start": 0.0, "t_end": 20.0, "n": 11},
    "output_path": "et.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  CHECK(report.rows == 11);
  const auto rows = lines_of(slurp(report.output_file));
  CHECK(rows[0] == "t,energy");
}

TEST_CASE("kernel runs rasterize n1 x n2 sample points") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "kernel",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "N": 2,
    "kernel": {"t": 1.0, "x1": 0.5, "x2": -0.25,
               "x1p_min": -2.0, "x1p_max": 2.0, "n1": 5,
               "x2p_min": -1.0, "x2p_max": 1.0, "n2": 3},
    "output_path": "k.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  CHECK(report.rows == 15);
  const auto rows = lines_of(slurp(report.output_file));
  CHECK(rows[0] == "x1p,x2p,re_k,im_k");
  REQUIRE(rows.size() == 16);
  // Raster endpoints are exact.
  CHECK(parse_csv_row(rows[1])[0] == -2.0);
  CHECK(parse_csv_row(rows[1])[1] == -1.0);
  CHECK(parse_csv_row(rows[15])[0] == 2.0);
  CHECK(parse_csv_row(rows[15])[1] == 1.0);
}

TEST_CASE("compare runs put closed and numeric pathways side by side") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "compare",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "noon": {"N": 1, "theta": 0.5, "phi": 0.25},
    "grid": {"t_start": 0.0, "t_end": 15.0, "n": 16},
    "tolerance": 1e-12,
    "output_path": "cmp.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  const auto rows = lines_of(slurp(report.output_file));
  CHECK(rows[0] == "t,energy_closed,energy_numeric");
  double worst = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto row = parse_csv_row(rows[k]);
    REQUIRE(row.size() == 3);
    worst = std::max(worst, std::abs(row[1] - row[2]));
  }
  CHECK(worst <= 1e-9);

  // Without a noon block the comparison is of transition probabilities.
  auto cfg2 = parse_config(R"({
    "task": "compare",
    "scenario": {"type": "constant", "Omega0": 1.0, "omega0": 0.1},
    "N": 2,
    "grid": {"t_start": 0.0, "t_end": 15.0, "n": 16},
    "tolerance": 1e-12,
    "output_path": "cmp2.csv"
  })");
  const auto report2 = run(cfg2, tmp.path.string());
  const auto rows2 = lines_of(slurp(report2.output_file));
  CHECK(rows2[0] == "t,p_closed,p_numeric");
  double worst2 = 0.0;
  for (std::size_t k = 1; k < rows2.size(); ++k) {
    const auto row = parse_csv_row(rows2[k]);
    worst2 = std::max(worst2, std::abs(row[1] - row[2]));
  }
  CHECK(worst2 <= 1e-9);
}

TEST_CASE("output paths are created under the requested directory") {
  ScratchDir tmp;
  auto cfg = parse_config(R"({
    "task": "propagator",
    "grid": {"t_start": 0.0, "t_end": 1.0, "n": 2},
    "output_path": "nested/dir/pair.csv"
  })");
  const auto report = run(cfg, tmp.path.string());
  CHECK(fs::exists(tmp.path / "nested" / "dir" / "pair.csv"));
  CHECK(fs::exists(tmp.path / "nested" / "dir" / "pair.csv.meta.json"));
  CHECK(report.output_file == (tmp.path / "nested" / "dir" / "pair.csv").string());
}

TEST_CASE("running an invalid config throws the aggregated ConfigError") {
  auto cfg = parse_config(R"({"task": "propagator"})");
  cfg.N = 0;
  cfg.tolerance = 1.0;
  CHECK_THROWS_AS(run(cfg, ""), ConfigError);
}

TEST_CASE("loading a missing file is an IoError") {
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.json"), IoError);
}

}  // TEST_SUITE("experiment")
