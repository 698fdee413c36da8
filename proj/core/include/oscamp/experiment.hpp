// experiment.hpp — config-driven experiment runs behind the command-line tool
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscamp/errors.hpp"
#include "oscamp/observables.hpp"
#include "oscamp/oscillator.hpp"
#include "oscamp/scenario.hpp"

namespace oscamp {

// What a run computes and writes.
enum class Task { Propagator, Energy, Transition, Kernel, Compare };

// θ-sweep request: energy of NOON(N, θ, φ) versus θ at one fixed time.
// When present on an Energy task it replaces the time grid (CSV columns
// theta, E).
struct ThetaGrid {
  double theta_start{0.0};
  double theta_end{1.5707963267948966};  // π/2
  int n{101};
  double time{0.0};  // evaluation time of the sweep
};

// Kernel-slice request: the coordinate kernel on an (x1′, x2′) grid with the
// unprimed point fixed (CSV columns x1p, x2p, re_k, im_k).
struct KernelGrid {
  double t{0.0};
  double x1{0.0};
  double x2{0.0};
  double x01{1.0};
  double x02{1.0};
  double x1p_min{-5.0};
  double x1p_max{5.0};
  int n1{41};
  double x2p_min{-5.0};
  double x2p_max{5.0};
  int n2{41};
};

// A full experiment description, deserializable from a JSON config file.
struct ExperimentConfig {
  ModelKind model{ModelKind::Amplifier};
  Scenario scenario{Constant{}};
  Task task{Task::Energy};
  std::optional<NoonSpec> noon;      // required by Energy (and Compare-energy)
  TimeGrid grid{0.0, 10.0, 101};     // time grid for time-series tasks
  std::optional<ThetaGrid> theta_grid;  // Energy-task θ sweep
  std::optional<KernelGrid> kernel;     // required by Kernel
  int N{1};                          // subspace for Transition/Kernel/Compare
  std::string output_path{"out.csv"};
  double tolerance{1e-10};           // numeric-branch ODE tolerance
};

// Parses a JSON config text.  Layout: {"model": "amplifier"|"standard",
// "scenario": {"type": "constant"|"rabi"|"lmsz"|"tabulated", …numeric keys…},
// "task": "propagator"|"energy"|"transition"|"kernel"|"compare",
// "noon": {"N", "theta", "phi"}, "grid": {"t_start", "t_end", "n"},
// "theta_grid": {…}, "kernel": {…}, "N", "output_path", "tolerance"}.
// Throws ConfigError on malformed input or invariant violations.
ExperimentConfig parse_config(const std::string& json_text);

// Reads and parses a config file.  Throws IoError if unreadable,
// ConfigError as above.
ExperimentConfig load_config(const std::string& path);

// All invariant violations, each as "field.path: message"; empty iff run's
// preconditions hold.  Never throws.
std::vector<std::string> validate(const ExperimentConfig& config);

// Result of a successful run.
struct RunReport {
  std::string output_file;       // CSV actually written
  std::string meta_file;         // JSON sidecar actually written
  std::size_t rows{0};           // data rows in the CSV
  double max_norm_defect{0.0};   // worst pair-unitarity defect encountered
};

// Executes a run: computes the task's trace and writes a deterministic CSV
// (header row, 17-significant-digit floats, '\n' endings) plus a JSON
// metadata sidecar (<output>.meta.json: config echo, tolerance, norm-defect
// max).  A nonempty `output_dir` is prepended to relative output paths;
// missing parent directories are created.  Throws ConfigError on invalid
// config, solver errors (Error subclasses) as-is, IoError on write failure.
RunReport run(const ExperimentConfig& config, const std::string& output_dir = "");

// Bundled preset configs: "fig1", "fig2a", "fig2b", "fig2c", "fig2d",
// "fig3a", "fig3b".  Throws ConfigError for unknown names.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace oscamp
