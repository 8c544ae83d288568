#pragma once

#include <iosfwd>
#include <string>

#include "edgeflow/config.hpp"

namespace edgeflow::cli {

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // config, scenario or argument errors
inline constexpr int kExitData = 2;   // unreadable or inconsistent input data

/// Replays left_%06d.pgm / right_%06d.pgm (right optional -> mono flow only)
/// plus optional rates.csv and truth.csv from `input_dir`, writing the
/// simulation-log CSV to `out_path`.
int cmd_replay(const std::string& input_dir, const Config& config, const std::string& out_path,
               std::ostream& err);

/// Runs the scenario file (open- or closed-loop) and writes the log CSV.
/// When `export_dir` is non-empty the rendered sequence is exported there in
/// the replay input layout.
int cmd_simulate(const std::string& scenario_path, const Config& config,
                 const std::string& out_path, const std::string& export_dir, std::ostream& err);

struct BenchResult {
  long frames = 0;
  double mean_ms = 0.0;
  double p99_ms = 0.0;
};

/// Times the full per-frame-pair pipeline (histograms, matching, horizon,
/// stereo height) on pre-rendered synthetic frames.
BenchResult run_bench(const Config& config, long frames);

/// run_bench plus a one-line report on `out`.
int cmd_bench(const Config& config, long frames, std::ostream& out, std::ostream& err);

}  // namespace edgeflow::cli
