// experiment.cpp — JSON config handling, task execution, CSV/meta output
#include "oscamp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace oscamp {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) s += "; ";
    s += parts[k];
  }
  return s;
}

// ---------------------------------------------------------------- parsing --

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& prefix, std::vector<std::string>& diags) {
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      diags.push_back(prefix + ": unknown key \"" + item.key() + "\"");
    }
  }
}

double get_num(const json& j, const char* key, double fallback,
               const std::string& prefix, std::vector<std::string>& diags) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    diags.push_back(prefix + "." + key + ": must be a number");
    return fallback;
  }
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback,
            const std::string& prefix, std::vector<std::string>& diags) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    diags.push_back(prefix + "." + key + ": must be an integer");
    return fallback;
  }
  return j[key].get<int>();
}

std::vector<double> get_num_array(const json& j, const char* key,
                                  const std::string& prefix,
                                  std::vector<std::string>& diags) {
  std::vector<double> out;
  if (!j.contains(key)) {
    diags.push_back(prefix + "." + key + ": required");
    return out;
  }
  if (!j[key].is_array()) {
    diags.push_back(prefix + "." + key + ": must be an array of numbers");
    return out;
  }
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      diags.push_back(prefix + "." + key + ": must be an array of numbers");
      return {};
    }
    out.push_back(v.get<double>());
  }
  return out;
}

// Complex samples come in as [re, im] pairs (bare numbers mean a real value).
std::vector<Complex> get_complex_array(const json& j, const char* key,
                                       const std::string& prefix,
                                       std::vector<std::string>& diags) {
  std::vector<Complex> out;
  if (!j.contains(key)) {
    diags.push_back(prefix + "." + key + ": required");
    return out;
  }
  if (!j[key].is_array()) {
    diags.push_back(prefix + "." + key +
                    ": must be an array of numbers or [re, im] pairs");
    return out;
  }
  for (const auto& v : j[key]) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() &&
               v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      diags.push_back(prefix + "." + key +
                      ": must be an array of numbers or [re, im] pairs");
      return {};
    }
  }
  return out;
}

Scenario parse_scenario(const json& j, std::vector<std::string>& diags) {
  const Scenario fallback{Constant{}};
  if (!j.is_object()) {
    diags.push_back("scenario: must be an object");
    return fallback;
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    diags.push_back("scenario.type: required string");
    return fallback;
  }
  const std::string type = j["type"].get<std::string>();
  const std::size_t before = diags.size();
  if (type == "constant") {
    check_keys(j, {"type", "Omega0", "omega0"}, "scenario", diags);
    Constant c;
    c.Omega0 = get_num(j, "Omega0", c.Omega0, "scenario", diags);
    c.omega0 = get_num(j, "omega0", c.omega0, "scenario", diags);
    if (c.omega0 < 0.0) diags.push_back("scenario.omega0: must be nonnegative");
    if (diags.size() > before) return fallback;
    return Scenario{c};
  }
  if (type == "rabi") {
    check_keys(j, {"type", "Omega0", "omega0", "nu0"}, "scenario", diags);
    Rabi r;
    r.Omega0 = get_num(j, "Omega0", r.Omega0, "scenario", diags);
    r.omega0 = get_num(j, "omega0", r.omega0, "scenario", diags);
    r.nu0 = get_num(j, "nu0", r.nu0, "scenario", diags);
    if (r.omega0 < 0.0) diags.push_back("scenario.omega0: must be nonnegative");
    if (diags.size() > before) return fallback;
    return Scenario{r};
  }
  if (type == "lmsz") {
    check_keys(j, {"type", "gamma", "omega0", "tau_i", "tau_f"}, "scenario",
               diags);
    Lmsz l;
    l.gamma = get_num(j, "gamma", l.gamma, "scenario", diags);
    l.omega0 = get_num(j, "omega0", l.omega0, "scenario", diags);
    l.tau_i = get_num(j, "tau_i", l.tau_i, "scenario", diags);
    l.tau_f = get_num(j, "tau_f", l.tau_f, "scenario", diags);
    if (!(l.gamma > 0.0)) diags.push_back("scenario.gamma: must be positive");
    if (l.omega0 < 0.0) diags.push_back("scenario.omega0: must be nonnegative");
    if (!(l.tau_i < l.tau_f)) {
      diags.push_back("scenario.tau_i: must be below tau_f");
    }
    if (diags.size() > before) return fallback;
    return Scenario{l};
  }
  if (type == "tabulated") {
    check_keys(j, {"type", "t", "Omega", "omega"}, "scenario", diags);
    Tabulated tab;
    tab.t = get_num_array(j, "t", "scenario", diags);
    tab.Omega = get_num_array(j, "Omega", "scenario", diags);
    tab.omega = get_complex_array(j, "omega", "scenario", diags);
    if (diags.size() == before) {
      if (tab.t.size() < 2) {
        diags.push_back("scenario.t: need at least 2 samples");
      } else if (tab.Omega.size() != tab.t.size() ||
                 tab.omega.size() != tab.t.size()) {
        diags.push_back("scenario: t, Omega, omega must have equal length");
      } else if (std::adjacent_find(tab.t.begin(), tab.t.end(),
                                    [](double x, double y) {
                                      return y <= x;
                                    }) != tab.t.end()) {
        diags.push_back("scenario.t: must be strictly increasing");
      }
    }
    if (diags.size() > before) return fallback;
    return Scenario{std::move(tab)};
  }
  diags.push_back("scenario.type: unknown type \"" + type + "\"");
  return fallback;
}

// -------------------------------------------------------------- serialize --

const char* model_name(ModelKind kind) {
  return kind == ModelKind::Amplifier ? "amplifier" : "standard";
}

const char* task_name(Task task) {
  switch (task) {
    case Task::Propagator: return "propagator";
    case Task::Energy: return "energy";
    case Task::Transition: return "transition";
    case Task::Kernel: return "kernel";
    case Task::Compare: return "compare";
  }
  return "energy";
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["type"] = s.name();
  if (s.holds<Constant>()) {
    const auto& c = s.get<Constant>();
    j["Omega0"] = c.Omega0;
    j["omega0"] = c.omega0;
  } else if (s.holds<Rabi>()) {
    const auto& r = s.get<Rabi>();
    j["Omega0"] = r.Omega0;
    j["omega0"] = r.omega0;
    j["nu0"] = r.nu0;
  } else if (s.holds<Lmsz>()) {
    const auto& l = s.get<Lmsz>();
    j["gamma"] = l.gamma;
    j["omega0"] = l.omega0;
    j["tau_i"] = l.tau_i;
    j["tau_f"] = l.tau_f;
  } else {
    const auto& tab = s.get<Tabulated>();
    j["t"] = tab.t;
    j["Omega"] = tab.Omega;
    json omega = json::array();
    for (const Complex& w : tab.omega) {
      omega.push_back({w.real(), w.imag()});
    }
    j["omega"] = std::move(omega);
  }
  return j;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = model_name(c.model);
  j["scenario"] = scenario_to_json(c.scenario);
  j["task"] = task_name(c.task);
  if (c.noon) {
    j["noon"] = {{"N", c.noon->N},
                 {"theta", c.noon->theta},
                 {"phi", c.noon->phi}};
  }
  j["grid"] = {{"t_start", c.grid.t_start},
               {"t_end", c.grid.t_end},
               {"n", c.grid.n}};
  if (c.theta_grid) {
    j["theta_grid"] = {{"theta_start", c.theta_grid->theta_start},
                       {"theta_end", c.theta_grid->theta_end},
                       {"n", c.theta_grid->n},
                       {"time", c.theta_grid->time}};
  }
  if (c.kernel) {
    j["kernel"] = {{"t", c.kernel->t},
                   {"x1", c.kernel->x1},
                   {"x2", c.kernel->x2},
                   {"x01", c.kernel->x01},
                   {"x02", c.kernel->x02},
                   {"x1p_min", c.kernel->x1p_min},
                   {"x1p_max", c.kernel->x1p_max},
                   {"n1", c.kernel->n1},
                   {"x2p_min", c.kernel->x2p_min},
                   {"x2p_max", c.kernel->x2p_max},
                   {"n2", c.kernel->n2}};
  }
  j["N"] = c.N;
  j["output_path"] = c.output_path;
  j["tolerance"] = c.tolerance;
  return j;
}

// -------------------------------------------------------------- execution --

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Uniform sample with exact endpoints.
double grid_value(double lo, double hi, int n, int k) {
  if (n == 1 || k == 0) return lo;
  if (k == n - 1) return hi;
  return lo + k * (hi - lo) / (n - 1);
}

// Scenario times must stay inside the windows the drives are defined on.
void check_time_in_window(const Scenario& s, double t, const char* field,
                          std::vector<std::string>& diags) {
  const double slack = 1e-9;
  if (s.holds<Lmsz>()) {
    const double t_i = s.get<Lmsz>().t_i();
    if (t < t_i - slack) {
      diags.push_back(std::string(field) +
                      ": must not precede the sweep start t_i = " +
                      std::to_string(t_i));
    }
  } else if (s.holds<Tabulated>()) {
    const auto& tab = s.get<Tabulated>();
    if (t < tab.t.front() - slack || t > tab.t.back() + slack) {
      diags.push_back(std::string(field) + ": must lie within the tabulated window [" +
                      std::to_string(tab.t.front()) + ", " +
                      std::to_string(tab.t.back()) + "]");
    }
  }
}

// Expectation of the instantaneous Hamiltonian for a spin-propagator pair;
// the subspace's scalar phase cancels in any expectation, so only the SU(2)
// part enters.
double energy_from_pair(ModelKind kind, const Scenario& s,
                        const SubspaceState& state0, const AmplitudePair& p,
                        double t) {
  const Eigen::MatrixXcd U = spin_propagator(state0.N, p).matrix;
  const Eigen::VectorXcd psi = U * state0.amplitudes;
  const Eigen::MatrixXcd H =
      hamiltonian_matrix(kind, state0.N, evaluate(s, t));
  return psi.dot(H * psi).real();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: not valid JSON (") + e.what() +
                      ")");
  }
  if (!j.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }
  std::vector<std::string> diags;
  check_keys(j,
             {"model", "scenario", "task", "noon", "grid", "theta_grid",
              "kernel", "N", "output_path", "tolerance"},
             "config", diags);

  ExperimentConfig cfg;
  if (j.contains("model")) {
    if (j["model"].is_string() && j["model"] == "amplifier") {
      cfg.model = ModelKind::Amplifier;
    } else if (j["model"].is_string() && j["model"] == "standard") {
      cfg.model = ModelKind::Standard;
    } else {
      diags.push_back("model: must be \"amplifier\" or \"standard\"");
    }
  }
  if (j.contains("scenario")) {
    cfg.scenario = parse_scenario(j["scenario"], diags);
  }
  if (j.contains("task")) {
    const std::string t = j["task"].is_string() ? j["task"].get<std::string>()
                                                : std::string();
    if (t == "propagator") {
      cfg.task = Task::Propagator;
    } else if (t == "energy") {
      cfg.task = Task::Energy;
    } else if (t == "transition") {
      cfg.task = Task::Transition;
    } else if (t == "kernel") {
      cfg.task = Task::Kernel;
    } else if (t == "compare") {
      cfg.task = Task::Compare;
    } else {
      diags.push_back("task: must be one of propagator, energy, transition, "
                      "kernel, compare");
    }
  }
  if (j.contains("noon")) {
    if (!j["noon"].is_object()) {
      diags.push_back("noon: must be an object");
    } else {
      check_keys(j["noon"], {"N", "theta", "phi"}, "noon", diags);
      NoonSpec spec;
      spec.N = get_int(j["noon"], "N", spec.N, "noon", diags);
      spec.theta = get_num(j["noon"], "theta", spec.theta, "noon", diags);
      spec.phi = get_num(j["noon"], "phi", spec.phi, "noon", diags);
      cfg.noon = spec;
    }
  }
  if (j.contains("grid")) {
    if (!j["grid"].is_object()) {
      diags.push_back("grid: must be an object");
    } else {
      check_keys(j["grid"], {"t_start", "t_end", "n"}, "grid", diags);
      cfg.grid.t_start =
          get_num(j["grid"], "t_start", cfg.grid.t_start, "grid", diags);
      cfg.grid.t_end =
          get_num(j["grid"], "t_end", cfg.grid.t_end, "grid", diags);
      cfg.grid.n = get_int(j["grid"], "n", cfg.grid.n, "grid", diags);
    }
  }
  if (j.contains("theta_grid")) {
    if (!j["theta_grid"].is_object()) {
      diags.push_back("theta_grid: must be an object");
    } else {
      const json& tg = j["theta_grid"];
      check_keys(tg, {"theta_start", "theta_end", "n", "time"}, "theta_grid",
                 diags);
      ThetaGrid g;
      g.theta_start =
          get_num(tg, "theta_start", g.theta_start, "theta_grid", diags);
      g.theta_end = get_num(tg, "theta_end", g.theta_end, "theta_grid", diags);
      g.n = get_int(tg, "n", g.n, "theta_grid", diags);
      g.time = get_num(tg, "time", g.time, "theta_grid", diags);
      cfg.theta_grid = g;
    }
  }
  if (j.contains("kernel")) {
    if (!j["kernel"].is_object()) {
      diags.push_back("kernel: must be an object");
    } else {
      const json& kj = j["kernel"];
      check_keys(kj,
                 {"t", "x1", "x2", "x01", "x02", "x1p_min", "x1p_max", "n1",
                  "x2p_min", "x2p_max", "n2"},
                 "kernel", diags);
      KernelGrid g;
      g.t = get_num(kj, "t", g.t, "kernel", diags);
      g.x1 = get_num(kj, "x1", g.x1, "kernel", diags);
      g.x2 = get_num(kj, "x2", g.x2, "kernel", diags);
      g.x01 = get_num(kj, "x01", g.x01, "kernel", diags);
      g.x02 = get_num(kj, "x02", g.x02, "kernel", diags);
      g.x1p_min = get_num(kj, "x1p_min", g.x1p_min, "kernel", diags);
      g.x1p_max = get_num(kj, "x1p_max", g.x1p_max, "kernel", diags);
      g.n1 = get_int(kj, "n1", g.n1, "kernel", diags);
      g.x2p_min = get_num(kj, "x2p_min", g.x2p_min, "kernel", diags);
      g.x2p_max = get_num(kj, "x2p_max", g.x2p_max, "kernel", diags);
      g.n2 = get_int(kj, "n2", g.n2, "kernel", diags);
      cfg.kernel = g;
    }
  }
  cfg.N = get_int(j, "N", cfg.N, "config", diags);
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) {
      diags.push_back("output_path: must be a string");
    } else {
      cfg.output_path = j["output_path"].get<std::string>();
    }
  }
  cfg.tolerance = get_num(j, "tolerance", cfg.tolerance, "config", diags);

  if (diags.empty()) {
    for (std::string& msg : validate(cfg)) {
      diags.push_back(std::move(msg));
    }
  }
  if (!diags.empty()) {
    throw ConfigError("config: " + join(diags));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config file " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("error while reading config file " + path);
  }
  return parse_config(text);
}

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> diags;
  if (!(config.tolerance >= 1e-13 && config.tolerance <= 1e-4)) {
    diags.push_back("tolerance: must lie in [1e-13, 1e-4]");
  }
  if (config.N < 1) {
    diags.push_back("N: must be at least 1");
  }
  if (config.output_path.empty()) {
    diags.push_back("output_path: must be nonempty");
  }
  if (config.noon) {
    if (config.noon->N < 1) diags.push_back("noon.N: must be at least 1");
    if (!std::isfinite(config.noon->theta) ||
        !std::isfinite(config.noon->phi)) {
      diags.push_back("noon: theta and phi must be finite");
    }
  }

  const bool needs_time_grid =
      config.task == Task::Propagator || config.task == Task::Transition ||
      config.task == Task::Compare ||
      (config.task == Task::Energy && !config.theta_grid);
  if (needs_time_grid) {
    if (config.grid.n < 1) {
      diags.push_back("grid.n: must be at least 1");
    }
    if (!std::isfinite(config.grid.t_start) ||
        !std::isfinite(config.grid.t_end)) {
      diags.push_back("grid: endpoints must be finite");
    } else {
      if (config.grid.n >= 2 && !(config.grid.t_end > config.grid.t_start)) {
        diags.push_back("grid: t_end must exceed t_start");
      }
      check_time_in_window(config.scenario, config.grid.t_start,
                           "grid.t_start", diags);
      check_time_in_window(config.scenario, config.grid.t_end, "grid.t_end",
                           diags);
    }
  }

  switch (config.task) {
    case Task::Propagator:
      break;
    case Task::Energy:
      if (!config.noon) {
        diags.push_back("noon: required by the energy task");
      }
      if (config.theta_grid) {
        if (config.theta_grid->n < 1) {
          diags.push_back("theta_grid.n: must be at least 1");
        }
        if (!std::isfinite(config.theta_grid->theta_start) ||
            !std::isfinite(config.theta_grid->theta_end) ||
            !std::isfinite(config.theta_grid->time)) {
          diags.push_back("theta_grid: values must be finite");
        } else {
          check_time_in_window(config.scenario, config.theta_grid->time,
                               "theta_grid.time", diags);
        }
      }
      break;
    case Task::Transition:
      break;
    case Task::Kernel: {
      if (!config.kernel) {
        diags.push_back("kernel: required by the kernel task");
        break;
      }
      const KernelGrid& g = *config.kernel;
      if (g.n1 < 1 || g.n2 < 1) {
        diags.push_back("kernel: n1 and n2 must be at least 1");
      }
      if (!(g.x01 > 0.0) || !(g.x02 > 0.0)) {
        diags.push_back("kernel: x01 and x02 must be positive");
      }
      if (!std::isfinite(g.t) || !std::isfinite(g.x1) ||
          !std::isfinite(g.x2) || !std::isfinite(g.x1p_min) ||
          !std::isfinite(g.x1p_max) || !std::isfinite(g.x2p_min) ||
          !std::isfinite(g.x2p_max)) {
        diags.push_back("kernel: values must be finite");
      } else {
        if (g.n1 >= 2 && !(g.x1p_max > g.x1p_min)) {
          diags.push_back("kernel: x1p_max must exceed x1p_min");
        }
        if (g.n2 >= 2 && !(g.x2p_max > g.x2p_min)) {
          diags.push_back("kernel: x2p_max must exceed x2p_min");
        }
        check_time_in_window(config.scenario, g.t, "kernel.t", diags);
      }
      if (config.N > 60) {
        diags.push_back("N: kernel task caps N at 60");
      }
      break;
    }
    case Task::Compare: {
      if (config.scenario.holds<Tabulated>()) {
        diags.push_back(
            "scenario.type: compare task needs a closed-form drive "
            "(constant, rabi, or lmsz)");
        break;
      }
      if (config.grid.n < 2) {
        diags.push_back("grid.n: compare task needs at least 2 samples");
      }
      if (std::isfinite(config.grid.t_start) &&
          config.grid.t_start < anchor_time(config.scenario) - 1e-9) {
        diags.push_back(
            "grid.t_start: compare task starts at the scenario anchor");
      }
      break;
    }
  }
  return diags;
}

RunReport run(const ExperimentConfig& config, const std::string& output_dir) {
  {
    std::vector<std::string> diags = validate(config);
    if (!diags.empty()) {
      throw ConfigError("config: " + join(diags));
    }
  }
  namespace fs = std::filesystem;
  fs::path out_path(config.output_path);
  if (!output_dir.empty() && out_path.is_relative()) {
    out_path = fs::path(output_dir) / out_path;
  }
  if (out_path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out_path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create output directory " +
                    out_path.parent_path().string() + ": " + ec.message());
    }
  }

  const Scenario& sc = config.scenario;
  const ModelKind kind = config.model;
  const PairEvaluator pairs(sc, kind, config.tolerance);

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  double defect = 0.0;
  const auto track = [&defect](const AmplitudePair& p) {
    defect = std::max(defect, norm_defect(p));
    return p;
  };

  switch (config.task) {
    case Task::Propagator: {
      header = {"t", "re_a", "im_a", "re_b", "im_b"};
      for (double t : config.grid.points()) {
        const AmplitudePair p = track(pairs.at(t));
        rows.push_back({t, p.a.real(), p.a.imag(), p.b.real(), p.b.imag()});
      }
      break;
    }
    case Task::Energy: {
      const NoonSpec& noon = *config.noon;
      if (config.theta_grid) {
        const ThetaGrid& tg = *config.theta_grid;
        header = {"theta", "energy"};
        const AmplitudePair p = track(pairs.at(tg.time));
        const Eigen::MatrixXcd U = spin_propagator(noon.N, p).matrix;
        const Eigen::MatrixXcd H =
            hamiltonian_matrix(kind, noon.N, evaluate(sc, tg.time));
        for (int k = 0; k < tg.n; ++k) {
          const double theta =
              grid_value(tg.theta_start, tg.theta_end, tg.n, k);
          NoonSpec swept = noon;
          swept.theta = theta;
          const Eigen::VectorXcd psi = U * noon_state(swept).amplitudes;
          rows.push_back({theta, psi.dot(H * psi).real()});
        }
      } else {
        header = {"t", "energy"};
        const SubspaceState state0 = noon_state(noon);
        for (double t : config.grid.points()) {
          const AmplitudePair p = track(pairs.at(t));
          rows.push_back({t, energy_from_pair(kind, sc, state0, p, t)});
        }
      }
      break;
    }
    case Task::Transition: {
      header = {"t", "p"};
      for (double t : config.grid.points()) {
        const AmplitudePair p = track(pairs.at(t));
        rows.push_back(
            {t, std::norm(spin_propagator(config.N, p).matrix(config.N, 0))});
      }
      break;
    }
    case Task::Kernel: {
      const KernelGrid& kg = *config.kernel;
      header = {"x1p", "x2p", "re_k", "im_k"};
      const int N = config.N;
      const Eigen::MatrixXcd V =
          block_evolution(kind, sc, N, kg.t, pairs).full();
      track(pairs.at(kg.t));
      const std::vector<double> psi1 =
          oscillator_wavefunctions(N, kg.x1, kg.x01);
      const std::vector<double> psi2 =
          oscillator_wavefunctions(N, kg.x2, kg.x02);
      // c_i = Σ_j V(i,j) ψ_{N−j}(x1) ψ_j(x2): the evolved source column.
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(N + 1);
      for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
          c(i) += V(i, j) * psi1[static_cast<std::size_t>(N - j)] *
                  psi2[static_cast<std::size_t>(j)];
        }
      }
      std::vector<std::vector<double>> psi2p_rows;
      psi2p_rows.reserve(static_cast<std::size_t>(kg.n2));
      for (int k2 = 0; k2 < kg.n2; ++k2) {
        psi2p_rows.push_back(oscillator_wavefunctions(
            N, grid_value(kg.x2p_min, kg.x2p_max, kg.n2, k2), kg.x02));
      }
      for (int k1 = 0; k1 < kg.n1; ++k1) {
        const double x1p = grid_value(kg.x1p_min, kg.x1p_max, kg.n1, k1);
        const std::vector<double> psi1p =
            oscillator_wavefunctions(N, x1p, kg.x01);
        for (int k2 = 0; k2 < kg.n2; ++k2) {
          const double x2p = grid_value(kg.x2p_min, kg.x2p_max, kg.n2, k2);
          const std::vector<double>& psi2p = psi2p_rows[static_cast<std::size_t>(k2)];
          Complex kv{0.0, 0.0};
          for (int i = 0; i <= N; ++i) {
            kv += psi1p[static_cast<std::size_t>(N - i)] *
                  psi2p[static_cast<std::size_t>(i)] * c(i);
          }
          rows.push_back({x1p, x2p, kv.real(), kv.imag()});
        }
      }
      break;
    }
    case Task::Compare: {
      const double anchor = pairs.anchor();
      const PairSolution numeric(sc, anchor, config.grid.t_end,
                                 config.tolerance,
                                 kind == ModelKind::Standard);
      defect = std::max(defect, numeric.max_norm_defect());
      if (config.noon) {
        const NoonSpec& noon = *config.noon;
        const SubspaceState state0 = noon_state(noon);
        header = {"t", "energy_closed", "energy_numeric"};
        for (double t : config.grid.points()) {
          const AmplitudePair p_closed = track(pairs.at(t));
          const AmplitudePair p_numeric = numeric.at(t);
          rows.push_back(
              {t, energy_from_pair(kind, sc, state0, p_closed, t),
               energy_from_pair(kind, sc, state0, p_numeric, t)});
        }
      } else {
        header = {"t", "p_closed", "p_numeric"};
        for (double t : config.grid.points()) {
          const AmplitudePair p_closed = track(pairs.at(t));
          const AmplitudePair p_numeric = numeric.at(t);
          rows.push_back(
              {t, std::pow(std::norm(p_closed.b), config.N),
               std::pow(std::norm(p_numeric.b), config.N)});
        }
      }
      break;
    }
  }

  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) {
    throw IoError("cannot open " + out_path.string() + " for writing");
  }
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k > 0) csv << ',';
    csv << header[k];
  }
  csv << '\n';
  for (const std::vector<double>& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) csv << ',';
      csv << format_value(row[k]);
    }
    csv << '\n';
  }
  csv.flush();
  if (!csv) {
    throw IoError("error while writing " + out_path.string());
  }

  const fs::path meta_path = out_path.string() + ".meta.json";
  json meta;
  meta["columns"] = header;
  meta["config"] = config_to_json(config);
  meta["max_norm_defect"] = defect;
  meta["rows"] = rows.size();
  std::ofstream meta_out(meta_path, std::ios::binary);
  if (!meta_out) {
    throw IoError("cannot open " + meta_path.string() + " for writing");
  }
  meta_out << meta.dump(2) << '\n';
  meta_out.flush();
  if (!meta_out) {
    throw IoError("error while writing " + meta_path.string());
  }

  return {out_path.string(), meta_path.string(), rows.size(), defect};
}

ExperimentConfig preset(const std::string& name) {
  constexpr double kPi = std::numbers::pi;
  ExperimentConfig cfg;
  cfg.tolerance = 1e-12;
  if (name == "fig1") {
    cfg.model = ModelKind::Amplifier;
    cfg.scenario = Scenario{Constant{1.0, 0.1}};
    cfg.task = Task::Energy;
    cfg.noon = NoonSpec{1, 0.0, 0.0};
    cfg.theta_grid = ThetaGrid{0.0, 0.5 * kPi, 101, 10.0};
  } else if (name == "fig2a") {
    cfg.model = ModelKind::Amplifier;
    cfg.scenario = Scenario{Rabi{1.0, 0.1, 1.0}};
    cfg.task = Task::Energy;
    cfg.noon = NoonSpec{1, 0.25 * kPi, 0.0};
    cfg.grid = TimeGrid{0.0, 40.0 * kPi, 1001};
  } else if (name == "fig2b") {
    cfg.model = ModelKind::Amplifier;
    cfg.scenario = Scenario{Lmsz{1.0, 1.0, -20.0, 20.0}};
    cfg.task = Task::Energy;
    cfg.noon = NoonSpec{1, 0.25 * kPi, 0.0};
    cfg.grid = TimeGrid{-10.0, 10.0, 1001};
  } else if (name == "fig2c") {
    cfg.model = ModelKind::Standard;
    cfg.scenario = Scenario{Rabi{1.0, 0.1, 0.5}};
    cfg.task = Task::Energy;
    cfg.noon = NoonSpec{1, 0.25 * kPi, 0.0};
    cfg.grid = TimeGrid{0.0, 40.0 * kPi, 1001};
  } else if (name == "fig2d") {
    cfg.model = ModelKind::Standard;
    cfg.scenario = Scenario{Lmsz{1.0, 1.0, -20.0, 20.0}};
    cfg.task = Task::Energy;
    cfg.noon = NoonSpec{1, 0.25 * kPi, 0.0};
    cfg.grid = TimeGrid{-10.0, 10.0, 501};
  } else if (name == "fig3a") {
    cfg.model = ModelKind::Amplifier;
    cfg.scenario = Scenario{Lmsz{1.0, 1.0, -20.0, 20.0}};
    cfg.task = Task::Transition;
    cfg.N = 1;
    cfg.grid = TimeGrid{-20.0, 20.0, 1001};
  } else if (name == "fig3b") {
    cfg.model = ModelKind::Standard;
    cfg.scenario = Scenario{Lmsz{1.0, 1.0, -20.0, 20.0}};
    cfg.task = Task::Transition;
    cfg.N = 1;
    cfg.grid = TimeGrid{-20.0, 20.0, 1001};
  } else {
    throw ConfigError("unknown preset \"" + name + "\"");
  }
  cfg.output_path = name + ".csv";
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b"};
}

}  // namespace oscamp
