#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edgeflow/pipeline.hpp"
#include "edgeflow/sim/render.hpp"

namespace edgeflow::sim {

/// One trajectory tick: where the camera is, its true planar velocity, and
/// the gyro sample the estimator would receive (absent for pure translation).
struct TrajectorySample {
  CameraPose pose;
  double vx_true = 0.0;
  double vy_true = 0.0;
  std::optional<RateMeasurement> rates;
};

std::vector<TrajectorySample> constant_velocity_track(double vx, double vy, double height,
                                                      int frames, double frame_rate);

/// v(t) = amplitude * sin(2*pi*t/period) per axis.
std::vector<TrajectorySample> sinusoid_track(double amplitude_x, double amplitude_y, double period,
                                             double height, int frames, double frame_rate);

/// Constant-rate attitude sweep with no translation. `with_rates` controls
/// whether the gyro samples are attached.
std::vector<TrajectorySample> pure_rotation_track(double pitch_rate, double roll_rate,
                                                  double pitch0, double roll0, double height,
                                                  int frames, double frame_rate, bool with_rates);

/// One CSV row of the simulation log.
struct LogRow {
  double t = 0.0;
  double v_ref_x = 0.0, v_ref_y = 0.0;
  double vx_true = 0.0, vy_true = 0.0;
  double vx_est = 0.0, vy_est = 0.0;
  double h_true = 0.0, h_est = 0.0;
  double flow_x = 0.0, flow_y = 0.0;
  double div_x = 0.0, div_y = 0.0;
  int n_x = 1, n_y = 1;
  QualityFlags quality;
};

extern const char* const kLogCsvHeader;

void write_csv(const std::vector<LogRow>& rows, std::ostream& out);

/// Receives every frame pair exactly as the pipeline saw it (after sensor
/// noise), for exporting sequences that replay bit-identically.
using FrameSink = std::function<void(int index, const ImageFrame& left, const ImageFrame& right,
                                     const std::optional<RateMeasurement>& rates)>;

struct NoiseParams {
  double sigma = 0.0;  // additive Gaussian, in intensity counts
  uint64_t seed = 1;
};

/// Renders each trajectory sample, runs the full pipeline and pairs the
/// estimates with ground truth.
std::vector<LogRow> run_open_loop(const std::vector<TrajectorySample>& track, const Scene& scene,
                                  const PipelineParams& params, const NoiseParams& noise = {},
                                  const FrameSink& sink = nullptr);

/// Velocity-error PI guidance producing tilt set-points for a first-order
/// attitude loop over a point mass with linear drag. The measured velocity is
/// low-passed before entering the PI so the whole-pixel flow quantization
/// does not drive a tilt limit cycle.
struct ControllerParams {
  double kp = 0.25;           // tilt rad per m/s of velocity error
  double ki = 0.18;           // tilt rad per m of integrated error
  double max_tilt = 0.35;     // rad
  double attitude_tau = 0.15; // s, first-order attitude response
  double drag = 0.30;         // 1/s, linear velocity drag
  double estimate_tau = 0.40; // s, low-pass on the velocity estimate

  void validate() const {
    if (kp <= 0.0 || ki < 0.0) throw ConfigError("controller gains must satisfy kp > 0, ki >= 0");
    if (max_tilt <= 0.0 || attitude_tau <= 0.0 || drag < 0.0 || estimate_tau < 0.0)
      throw ConfigError("controller limits must be positive");
  }
};

/// Reference velocity valid from time t until the next entry (zero-order hold).
struct ReferencePoint {
  double t = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

/// Closed loop at the camera frame rate: render -> estimate -> PI guidance ->
/// attitude -> point-mass integration. Throws SimDivergenceError if the
/// vehicle leaves the scene bounds. Deterministic given (scene, noise seed).
std::vector<LogRow> run_closed_loop(const std::vector<ReferencePoint>& references, double duration,
                                    double height, const Scene& scene,
                                    const PipelineParams& params, const ControllerParams& ctrl,
                                    const NoiseParams& noise = {}, const FrameSink& sink = nullptr);

struct Metrics {
  double mse = 0.0;
  double nmxm = 0.0;
};

/// MSE plus normalized maximum cross-correlation magnitude between two
/// equal-length series sampled at `frame_rate`; the lag search is bounded to
/// +-max_lag_seconds.
Metrics metrics(const std::vector<double>& estimate, const std::vector<double>& truth,
                double frame_rate, double max_lag_seconds = 2.0);

}  // namespace edgeflow::sim
