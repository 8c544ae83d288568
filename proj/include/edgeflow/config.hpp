#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "edgeflow/pipeline_params.hpp"
#include "edgeflow/sim/simulate.hpp"

namespace edgeflow {

/// Runtime configuration shared by the CLI commands. Angles are accepted in
/// degrees here and converted once; everything downstream is radians.
struct Config {
  PipelineParams pipeline;
  double frame_rate = 25.0;  // Hz
  double noise_sigma = 0.0;  // intensity counts
  uint64_t seed = 1;
  double texture_contrast = 1.0;
  sim::ControllerParams controller;

  void validate() const;
};

Config default_config();

/// key=value format, '#' comments. Unknown keys are rejected.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

/// Canonical form: every key, fixed order. parse(serialize(c)) == c.
std::string serialize_config(const Config& config);

}  // namespace edgeflow
