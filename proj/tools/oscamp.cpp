// oscamp.cpp — command-line front end for config-driven experiment runs
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "oscamp/errors.hpp"
#include "oscamp/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"oscamp — driven two-mode oscillator experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string output_dir;
  if (const char* env = std::getenv("OSCAMP_OUTPUT_DIR")) {
    output_dir = env;
  }

  CLI::App* run_cmd =
      app.add_subcommand("run", "Execute an experiment, write CSV + metadata");
  CLI::Option* cfg_opt =
      run_cmd->add_option("--config", config_path, "JSON config file");
  CLI::Option* preset_opt =
      run_cmd->add_option("--preset", preset_name, "bundled preset name");
  cfg_opt->excludes(preset_opt);
  run_cmd->add_option(
      "--output-dir", output_dir,
      "directory prepended to relative output paths (default: "
      "$OSCAMP_OUTPUT_DIR, else the working directory)");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Parse a config file and report every violation");
  validate_cmd->add_option("--config", config_path, "JSON config file")
      ->required();

  CLI::App* presets_cmd =
      app.add_subcommand("presets", "List bundled preset names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets_cmd->parsed()) {
      for (const std::string& name : oscamp::preset_names()) {
        std::printf("%s\n", name.c_str());
      }
      return 0;
    }
    if (validate_cmd->parsed()) {
      oscamp::load_config(config_path);
      std::printf("ok\n");
      return 0;
    }
    oscamp::ExperimentConfig cfg;
    if (preset_opt->count() > 0) {
      cfg = oscamp::preset(preset_name);
    } else if (cfg_opt->count() > 0) {
      cfg = oscamp::load_config(config_path);
    } else {
      std::fprintf(stderr, "run: need --config or --preset\n");
      return 2;
    }
    const oscamp::RunReport report = oscamp::run(cfg, output_dir);
    std::printf("wrote %s (%zu rows) and %s\n", report.output_file.c_str(),
                report.rows, report.meta_file.c_str());
    std::printf("max pair norm defect: %.3e\n", report.max_norm_defect);
    return 0;
  } catch (const oscamp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const oscamp::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const oscamp::Error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
