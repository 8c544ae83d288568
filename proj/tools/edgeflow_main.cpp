#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edgeflow/cli/commands.hpp"
#include "edgeflow/config.hpp"

namespace {

edgeflow::Config load_or_default(const std::string& config_path) {
  edgeflow::Config cfg =
      config_path.empty() ? edgeflow::default_config() : edgeflow::load_config(config_path);
  if (const char* seed_env = std::getenv("EDGEFLOW_SEED")) {
    try {
      size_t pos = 0;
      const unsigned long long v = std::stoull(seed_env, &pos);
      if (pos != std::string(seed_env).size()) throw std::invalid_argument(seed_env);
      cfg.seed = v;
    } catch (const std::exception&) {
      throw edgeflow::ConfigError(std::string("bad EDGEFLOW_SEED value '") + seed_env + "'");
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-histogram optical flow: replay, simulation and benchmarking"};
  app.require_subcommand(1);

  std::string config_path;
  std::string input_dir, scenario_path, out_path, export_dir;
  long frames = 1000;

  CLI::App* replay = app.add_subcommand("replay", "replay a recorded PGM sequence to CSV");
  replay->add_option("--input", input_dir, "directory with left_%06d.pgm [right_%06d.pgm]")
      ->required();
  replay->add_option("--config", config_path, "config file (key=value)");
  replay->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run a scenario file to CSV");
  simulate->add_option("--scenario", scenario_path, "scenario file")->required();
  simulate->add_option("--config", config_path, "config file (key=value)");
  simulate->add_option("--out", out_path, "output CSV path")->required();
  simulate->add_option("--export", export_dir, "also export rendered frames for replay");

  CLI::App* bench = app.add_subcommand("bench", "time the per-frame pipeline");
  bench->add_option("--config", config_path, "config file (key=value)");
  bench->add_option("--frames", frames, "number of frame pairs to time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : edgeflow::cli::kExitUsage;
  }

  try {
    const edgeflow::Config cfg = load_or_default(config_path);
    if (replay->parsed()) return edgeflow::cli::cmd_replay(input_dir, cfg, out_path, std::cerr);
    if (simulate->parsed())
      return edgeflow::cli::cmd_simulate(scenario_path, cfg, out_path, export_dir, std::cerr);
    return edgeflow::cli::cmd_bench(cfg, frames, std::cout, std::cerr);
  } catch (const edgeflow::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return edgeflow::cli::kExitUsage;
  } catch (const edgeflow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return edgeflow::cli::kExitData;
  }
}
