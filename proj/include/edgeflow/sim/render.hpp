#pragma once

#include <numbers>
#include <utility>

#include "edgeflow/camera.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/image.hpp"
#include "edgeflow/sim/scene.hpp"

namespace edgeflow::sim {

/// Camera position above the ground plane z=0 (world z up) plus attitude.
/// pitch > 0 tilts the optical axis toward +x, roll > 0 toward +y; image
/// axes follow world x/y at zero attitude.
struct CameraPose {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;  // height above the plane, > 0
  double roll = 0.0;
  double pitch = 0.0;
  double timestamp = 0.0;

  void validate() const {
    if (z <= 0.0) throw ConfigError("camera must be above the plane (z > 0)");
    if (std::abs(roll) >= std::numbers::pi / 2 || std::abs(pitch) >= std::numbers::pi / 2)
      throw ConfigError("attitude must stay below 90 degrees");
  }
};

/// Pinhole projection of the textured plane with bilinear-continuous
/// sampling, quantized to 8 bits. Pure function of its arguments.
ImageFrame render(const Scene& scene, const CameraPose& pose, const CameraIntrinsics& intrinsics);

/// Left/right pair with optical centers separated by the stereo baseline
/// along the camera x axis.
std::pair<ImageFrame, ImageFrame> render_stereo(const Scene& scene, const CameraPose& pose,
                                                const CameraIntrinsics& intrinsics);

}  // namespace edgeflow::sim
