#pragma once

#include "edgeflow/camera.hpp"
#include "edgeflow/matching.hpp"

namespace edgeflow {

struct PipelineParams {
  CameraIntrinsics intrinsics;
  MatchParams match;
  int ring_capacity = 10;      // max stored histogram pairs
  int max_disparity = 32;      // stereo search bound in pixels
  int height_median = 5;       // height filter window
  double nominal_dt = 0.04;    // used before the second frame fixes the real interval

  void validate() const {
    intrinsics.validate();
    match.validate();
    if (ring_capacity < 1) throw ConfigError("ring capacity must be at least 1");
    if (max_disparity < 1) throw ConfigError("max disparity must be at least 1");
    if (height_median < 1) throw ConfigError("height median window must be at least 1");
    if (nominal_dt <= 0.0) throw ConfigError("nominal dt must be positive");
  }
};

}  // namespace edgeflow
