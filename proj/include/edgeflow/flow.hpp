#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "edgeflow/camera.hpp"
#include "edgeflow/matching.hpp"
#include "edgeflow/types.hpp"

namespace edgeflow {

struct RateMeasurement {
  double roll_rate = 0.0;   // rad/s, drives the vertical image axis
  double pitch_rate = 0.0;  // rad/s, drives the horizontal image axis
  double timestamp = 0.0;
};

/// Per-frame sub-pixel flow. flow_* is displacement per frame after division
/// by the horizon and removal of the predicted rotation shift; divergence_*
/// is the fitted slope per frame.
struct FlowEstimate {
  double flow_x = 0.0;
  double flow_y = 0.0;
  double divergence_x = 0.0;
  double divergence_y = 0.0;
  int horizon_n_x = 1;
  int horizon_n_y = 1;
  double timestamp = 0.0;
  QualityFlags quality;

  bool operator==(const FlowEstimate&) const = default;
};

/// Number of frames to look back for matching: min(floor(1/|prev_flow|),
/// capacity, buffer_size), clamped to at least 1; zero previous flow
/// saturates the horizon. Slow motion accumulates over a long horizon until
/// the displacement becomes measurable in whole pixels.
int select_horizon(double prev_flow, int buffer_size, int capacity);

/// Pixel shift a rotation at `rate` sustained over `dt_span` induces on the
/// given image axis (small-angle model, rounded to whole pixels). The result
/// is passed to match_local as the predicted shift, re-centering the search.
int predict_rotation_shift(const RateMeasurement& rate, double dt_span,
                           const CameraIntrinsics& intrinsics, Axis axis);

/// Bounded buffer of past per-frame histogram pairs, newest last. Push
/// evicts the oldest entry once `capacity` is reached and requires strictly
/// increasing timestamps.
class HistogramRing {
 public:
  struct Entry {
    EdgeHistogram horizontal;
    EdgeHistogram vertical;
  };

  explicit HistogramRing(int capacity);

  void push(EdgeHistogram horizontal, EdgeHistogram vertical);
  void clear() { entries_.clear(); }

  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }

  /// index 0 = oldest, size()-1 = newest
  const Entry& at(int index) const { return entries_.at(static_cast<size_t>(index)); }
  const Entry& newest() const { return entries_.back(); }

 private:
  int capacity_;
  std::deque<Entry> entries_;
};

/// Stateful per-frame flow pipeline: keeps the histogram ring plus the
/// per-frame rotation increments, selects the horizon per axis from the
/// previous estimate, matches against the histogram that many frames back,
/// and divides the fitted translation by the horizon. Single writer; the
/// returned estimates are plain values.
class FlowTracker {
 public:
  FlowTracker(CameraIntrinsics intrinsics, MatchParams params, int capacity = 10);

  /// Consumes one frame worth of histograms (matching timestamps) and an
  /// optional gyro sample valid for the span since the previous frame.
  FlowEstimate step(const EdgeHistogram& horizontal, const EdgeHistogram& vertical,
                    const std::optional<RateMeasurement>& rates = std::nullopt);

  void reset();

  int ring_size() const { return ring_.size(); }
  int capacity() const { return ring_.capacity(); }

 private:
  struct AxisState {
    double prev_flow = 0.0;
    bool reacquire = false;  // last match failed; restart at horizon 1
  };

  CameraIntrinsics intrinsics_;
  MatchParams params_;
  HistogramRing ring_;
  // rotation (radians) accumulated over the span ending at the same-index ring entry
  std::deque<double> span_angle_x_;
  std::deque<double> span_angle_y_;
  AxisState state_x_;
  AxisState state_y_;
};

}  // namespace edgeflow
