#include "edgeflow/flow.hpp"

#include <cmath>
#include <numeric>

#include "edgeflow/error.hpp"

namespace edgeflow {

int select_horizon(double prev_flow, int buffer_size, int capacity) {
  const int limit = std::min(capacity, buffer_size);
  if (limit < 1) throw ConfigError("horizon selection needs a non-empty buffer");
  const double inv = 1.0 / std::abs(prev_flow);  // +inf for zero flow
  if (!(inv < static_cast<double>(limit))) return limit;
  // smallest horizon whose accumulated displacement reaches a whole pixel;
  // rounding down instead gets stuck one frame short of measurability
  const int n = static_cast<int>(std::ceil(inv));
  return n < 1 ? 1 : n;
}

namespace {

int rotation_pixel_shift(double angle, double focal_px) {
  return static_cast<int>(std::lround(angle * focal_px));
}

}  // namespace

int predict_rotation_shift(const RateMeasurement& rate, double dt_span,
                           const CameraIntrinsics& intrinsics, Axis axis) {
  if (dt_span <= 0.0) throw ConfigError("rotation span must be positive");
  const double rate_for_axis = axis == Axis::Horizontal ? rate.pitch_rate : rate.roll_rate;
  const double focal = axis == Axis::Horizontal ? intrinsics.focal_px_horizontal()
                                                : intrinsics.focal_px_vertical();
  return rotation_pixel_shift(rate_for_axis * dt_span, focal);
}

HistogramRing::HistogramRing(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw ConfigError("ring capacity must be at least 1");
}

void HistogramRing::push(EdgeHistogram horizontal, EdgeHistogram vertical) {
  if (horizontal.axis != Axis::Horizontal || vertical.axis != Axis::Vertical)
    throw MatchError("ring entries must carry one histogram per axis");
  if (horizontal.timestamp != vertical.timestamp)
    throw MatchError("histogram pair timestamps differ");
  if (!entries_.empty() && horizontal.timestamp <= entries_.back().horizontal.timestamp)
    throw MatchError("ring timestamps must be strictly increasing");
  entries_.push_back(Entry{std::move(horizontal), std::move(vertical)});
  if (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
}

FlowTracker::FlowTracker(CameraIntrinsics intrinsics, MatchParams params, int capacity)
    : intrinsics_(intrinsics), params_(params), ring_(capacity) {
  intrinsics_.validate();
  params_.validate();
}

void FlowTracker::reset() {
  ring_.clear();
  span_angle_x_.clear();
  span_angle_y_.clear();
  state_x_ = AxisState{};
  state_y_ = AxisState{};
}

FlowEstimate FlowTracker::step(const EdgeHistogram& horizontal, const EdgeHistogram& vertical,
                               const std::optional<RateMeasurement>& rates) {
  FlowEstimate est;
  est.timestamp = horizontal.timestamp;

  if (ring_.empty()) {
    est.quality.warmup = true;
    ring_.push(horizontal, vertical);
    span_angle_x_.push_back(0.0);
    span_angle_y_.push_back(0.0);
    return est;
  }

  const double dt_frame = horizontal.timestamp - ring_.newest().horizontal.timestamp;
  const double cur_angle_x = rates ? rates->pitch_rate * dt_frame : 0.0;
  const double cur_angle_y = rates ? rates->roll_rate * dt_frame : 0.0;

  const int size = ring_.size();

  struct AxisResult {
    double flow = 0.0;
    double divergence = 0.0;
    int horizon = 1;
    bool failed = false;
  };

  auto run_axis = [&](Axis axis, const AxisState& state, double cur_angle,
                      const std::deque<double>& span_angles) {
    AxisResult r;
    // after a failed match the horizon restarts at 1: a long horizon chosen
    // from a bogus flow value pushes the true displacement out of the search
    // range, which would keep the failure alive
    r.horizon = state.reacquire ? 1 : select_horizon(state.prev_flow, size, ring_.capacity());
    // rotation accumulated from the reference histogram up to the current frame
    double angle = cur_angle;
    for (int j = size - r.horizon + 1; j < size; ++j) angle += span_angles[static_cast<size_t>(j)];
    const double focal = axis == Axis::Horizontal ? intrinsics_.focal_px_horizontal()
                                                  : intrinsics_.focal_px_vertical();
    const int predicted = rotation_pixel_shift(angle, focal);

    const HistogramRing::Entry& past = ring_.at(size - r.horizon);
    const EdgeHistogram& past_hist = axis == Axis::Horizontal ? past.horizontal : past.vertical;
    const EdgeHistogram& cur_hist = axis == Axis::Horizontal ? horizontal : vertical;
    try {
      DisplacementProfile profile = match_local(past_hist, cur_hist, params_, predicted);
      // displacements pinned at the search edge mean the real shift is out of
      // range; the fit would report a lower bound, not a measurement
      int saturated = 0;
      for (int d : profile.displacements)
        if (std::abs(d - predicted) >= params_.max_search) ++saturated;
      if (3 * saturated >= profile.size())
        throw MatchError("search range saturated; displacement out of range");
      LinearFlowFit fit = fit_linear(profile);
      r.flow = (fit.translation - predicted) / r.horizon;
      r.divergence = fit.divergence / r.horizon;
    } catch (const Error&) {
      r.failed = true;  // flow falls back to zero, flagged below
    }
    return r;
  };

  const AxisResult rx = run_axis(Axis::Horizontal, state_x_, cur_angle_x, span_angle_x_);
  const AxisResult ry = run_axis(Axis::Vertical, state_y_, cur_angle_y, span_angle_y_);

  est.flow_x = rx.flow;
  est.flow_y = ry.flow;
  est.divergence_x = rx.divergence;
  est.divergence_y = ry.divergence;
  est.horizon_n_x = rx.horizon;
  est.horizon_n_y = ry.horizon;
  est.quality.textureless_x = rx.failed;
  est.quality.textureless_y = ry.failed;

  state_x_ = AxisState{rx.flow, rx.failed};
  state_y_ = AxisState{ry.flow, ry.failed};

  ring_.push(horizontal, vertical);
  span_angle_x_.push_back(cur_angle_x);
  span_angle_y_.push_back(cur_angle_y);
  while (static_cast<int>(span_angle_x_.size()) > ring_.capacity()) {
    span_angle_x_.pop_front();
    span_angle_y_.pop_front();
  }
  return est;
}

}  // namespace edgeflow
