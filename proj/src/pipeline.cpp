#include "edgeflow/pipeline.hpp"

#include "edgeflow/error.hpp"

namespace edgeflow {

VelocityPipeline::VelocityPipeline(PipelineParams params)
    : params_(std::move(params)),
      tracker_(params_.intrinsics, params_.match, params_.ring_capacity),
      height_filter_(params_.height_median) {
  params_.validate();
}

void VelocityPipeline::reset() {
  tracker_.reset();
  height_filter_.clear();
  have_last_timestamp_ = false;
}

FrameEstimate VelocityPipeline::process(const ImageFrame& left, const ImageFrame& right,
                                        const std::optional<RateMeasurement>& rates) {
  return finish(left, rates, &right);
}

FrameEstimate VelocityPipeline::process(const ImageFrame& frame,
                                        const std::optional<RateMeasurement>& rates) {
  return finish(frame, rates, nullptr);
}

FrameEstimate VelocityPipeline::finish(const ImageFrame& frame,
                                       const std::optional<RateMeasurement>& rates,
                                       const ImageFrame* right) {
  FrameEstimate out;

  auto [hist_h, hist_v] = histograms_of(frame);
  out.flow = tracker_.step(hist_h, hist_v, rates);

  if (right != nullptr) {
    try {
      EdgeHistogram right_h = edge_histogram(sobel_gradient(*right, Axis::Horizontal),
                                             Axis::Horizontal);
      out.disparity = match_global(hist_h, right_h, params_.max_disparity);
      if (auto h = height_from_disparity(out.disparity, params_.intrinsics)) height_filter_.push(*h);
    } catch (const Error&) {
      out.disparity = -1;  // stereo failed this frame; the median carries over
    }
  }

  const double dt = have_last_timestamp_ ? frame.timestamp - last_timestamp_ : params_.nominal_dt;
  last_timestamp_ = frame.timestamp;
  have_last_timestamp_ = true;

  const std::optional<double> height = height_filter_.value();
  if (height) {
    out.velocity = velocity_from_flow(out.flow, *height, dt, params_.intrinsics);
  } else {
    out.velocity.dt = dt;
    out.velocity.timestamp = frame.timestamp;
    out.velocity.quality = out.flow.quality;
    out.velocity.quality.no_height = true;
  }
  return out;
}

}  // namespace edgeflow
