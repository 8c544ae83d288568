#pragma once

#include <cmath>
#include <numbers>

#include "edgeflow/error.hpp"

namespace edgeflow {

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Pinhole model of the downward-looking stereo rig. Angles in radians;
/// focal lengths are derived, not stored.
struct CameraIntrinsics {
  double fov_horizontal = deg2rad(57.4);
  double fov_vertical = deg2rad(44.5);
  int image_width = 128;
  int image_height = 96;
  double stereo_baseline = 0.06;  // meters, along camera x

  double focal_px_horizontal() const { return (image_width / 2.0) / std::tan(fov_horizontal / 2.0); }
  double focal_px_vertical() const { return (image_height / 2.0) / std::tan(fov_vertical / 2.0); }

  void validate() const {
    if (fov_horizontal <= 0.0 || fov_horizontal >= std::numbers::pi ||
        fov_vertical <= 0.0 || fov_vertical >= std::numbers::pi)
      throw ConfigError("field of view must be in (0, pi) radians");
    if (image_width < 3 || image_height < 3) throw ConfigError("image dimensions must be at least 3x3");
    if (stereo_baseline <= 0.0) throw ConfigError("stereo baseline must be positive");
  }
};

}  // namespace edgeflow
