#pragma once

#include <optional>

#include "edgeflow/geometry.hpp"
#include "edgeflow/histograms.hpp"
#include "edgeflow/image.hpp"
#include "edgeflow/pipeline_params.hpp"

namespace edgeflow {

/// Everything the pipeline derives from one frame (pair).
struct FrameEstimate {
  FlowEstimate flow;
  VelocityEstimate velocity;
  int disparity = -1;  // -1 when stereo matching was unavailable or failed
};

/// Full per-frame pipeline: histograms -> adaptive-horizon flow -> stereo
/// disparity -> median-filtered height -> metric velocity. Owns all state
/// between frames; single writer.
class VelocityPipeline {
 public:
  explicit VelocityPipeline(PipelineParams params);

  /// Stereo input: flow from the left frame, height from global matching of
  /// the left/right horizontal histograms.
  FrameEstimate process(const ImageFrame& left, const ImageFrame& right,
                        const std::optional<RateMeasurement>& rates = std::nullopt);

  /// Mono input: flow only; the velocity carries the no_height flag.
  FrameEstimate process(const ImageFrame& frame,
                        const std::optional<RateMeasurement>& rates = std::nullopt);

  void reset();

  const PipelineParams& params() const { return params_; }

 private:
  FrameEstimate finish(const ImageFrame& frame, const std::optional<RateMeasurement>& rates,
                       const ImageFrame* right);

  PipelineParams params_;
  FlowTracker tracker_;
  MedianWindow height_filter_;
  double last_timestamp_ = 0.0;
  bool have_last_timestamp_ = false;
};

}  // namespace edgeflow
