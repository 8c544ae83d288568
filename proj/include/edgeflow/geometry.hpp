#pragma once

#include <deque>
#include <optional>

#include "edgeflow/camera.hpp"
#include "edgeflow/flow.hpp"

namespace edgeflow {

/// Metric velocity in camera/body axes plus the height it was scaled with.
struct VelocityEstimate {
  double v_x = 0.0;
  double v_y = 0.0;
  double height = 0.0;  // meters; 0 when quality.no_height
  double dt = 0.0;
  double timestamp = 0.0;
  QualityFlags quality;

  bool operator==(const VelocityEstimate&) const = default;
};

/// Triangulated height baseline*f/disparity, or nullopt for disparity < 1
/// (scene at infinity or failed stereo match).
std::optional<double> height_from_disparity(int disparity_px, const CameraIntrinsics& intrinsics);

/// v = height * tan(flow * fov / extent) / dt per axis, pairing horizontal
/// flow with (fov_h, width) and vertical flow with (fov_v, height). Quality
/// flags are carried over from the flow estimate.
VelocityEstimate velocity_from_flow(const FlowEstimate& flow, double height, double dt,
                                    const CameraIntrinsics& intrinsics);

/// Running median over the last `window` samples. Suppresses single-frame
/// stereo mismatches before the height enters the velocity scaling.
class MedianWindow {
 public:
  explicit MedianWindow(int window = 5) : window_(window) {}

  void push(double value);
  void clear() { samples_.clear(); }

  /// nullopt until the first sample arrives
  std::optional<double> value() const;
  int count() const { return static_cast<int>(samples_.size()); }

 private:
  int window_;
  std::deque<double> samples_;
};

}  // namespace edgeflow
