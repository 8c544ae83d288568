#include "edgeflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace edgeflow {

std::optional<double> height_from_disparity(int disparity_px, const CameraIntrinsics& intrinsics) {
  if (disparity_px < 1) return std::nullopt;
  return intrinsics.stereo_baseline * intrinsics.focal_px_horizontal() / disparity_px;
}

VelocityEstimate velocity_from_flow(const FlowEstimate& flow, double height, double dt,
                                    const CameraIntrinsics& intrinsics) {
  if (height <= 0.0) throw ConfigError("height must be positive");
  if (dt <= 0.0) throw ConfigError("dt must be positive");

  VelocityEstimate v;
  v.height = height;
  v.dt = dt;
  v.timestamp = flow.timestamp;
  v.quality = flow.quality;
  v.v_x = height * std::tan(flow.flow_x * intrinsics.fov_horizontal / intrinsics.image_width) / dt;
  v.v_y = height * std::tan(flow.flow_y * intrinsics.fov_vertical / intrinsics.image_height) / dt;
  return v;
}

void MedianWindow::push(double value) {
  samples_.push_back(value);
  if (static_cast<int>(samples_.size()) > window_) samples_.pop_front();
}

std::optional<double> MedianWindow::value() const {
  if (samples_.empty()) return std::nullopt;
  std::vector<double> sorted(samples_.begin(), samples_.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace edgeflow
