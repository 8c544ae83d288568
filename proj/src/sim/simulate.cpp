#include "edgeflow/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace edgeflow::sim {

namespace {

constexpr double kGravity = 9.81;
constexpr double kSceneBound = 50.0;  // meters; divergence guard for closed loop

void add_sensor_noise(ImageFrame& frame, double sigma, std::mt19937& rng) {
  if (sigma <= 0.0) return;
  std::normal_distribution<double> dist(0.0, sigma);
  for (auto& px : frame.pixels) {
    const double v = std::nearbyint(px + dist(rng));
    px = static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
  }
}

LogRow make_row(double t, const FrameEstimate& est, double h_true, double vx_true, double vy_true,
                double vref_x, double vref_y) {
  LogRow row;
  row.t = t;
  row.v_ref_x = vref_x;
  row.v_ref_y = vref_y;
  row.vx_true = vx_true;
  row.vy_true = vy_true;
  row.vx_est = est.velocity.v_x;
  row.vy_est = est.velocity.v_y;
  row.h_true = h_true;
  row.h_est = est.velocity.height;
  row.flow_x = est.flow.flow_x;
  row.flow_y = est.flow.flow_y;
  row.div_x = est.flow.divergence_x;
  row.div_y = est.flow.divergence_y;
  row.n_x = est.flow.horizon_n_x;
  row.n_y = est.flow.horizon_n_y;
  row.quality = est.velocity.quality;
  return row;
}

}  // namespace

std::vector<TrajectorySample> constant_velocity_track(double vx, double vy, double height,
                                                      int frames, double frame_rate) {
  std::vector<TrajectorySample> track;
  track.reserve(static_cast<size_t>(frames));
  const double dt = 1.0 / frame_rate;
  for (int k = 0; k < frames; ++k) {
    TrajectorySample s;
    s.pose = CameraPose{vx * k * dt, vy * k * dt, height, 0.0, 0.0, k * dt};
    s.vx_true = vx;
    s.vy_true = vy;
    track.push_back(s);
  }
  return track;
}

std::vector<TrajectorySample> sinusoid_track(double amplitude_x, double amplitude_y, double period,
                                             double height, int frames, double frame_rate) {
  std::vector<TrajectorySample> track;
  track.reserve(static_cast<size_t>(frames));
  const double dt = 1.0 / frame_rate;
  const double omega = 2.0 * std::numbers::pi / period;
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    TrajectorySample s;
    // position is the exact integral of v(t) = A sin(omega t)
    s.pose = CameraPose{amplitude_x * (1.0 - std::cos(omega * t)) / omega,
                        amplitude_y * (1.0 - std::cos(omega * t)) / omega,
                        height, 0.0, 0.0, t};
    s.vx_true = amplitude_x * std::sin(omega * t);
    s.vy_true = amplitude_y * std::sin(omega * t);
    track.push_back(s);
  }
  return track;
}

std::vector<TrajectorySample> pure_rotation_track(double pitch_rate, double roll_rate,
                                                  double pitch0, double roll0, double height,
                                                  int frames, double frame_rate, bool with_rates) {
  std::vector<TrajectorySample> track;
  track.reserve(static_cast<size_t>(frames));
  const double dt = 1.0 / frame_rate;
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    TrajectorySample s;
    s.pose = CameraPose{0.0, 0.0, height, roll0 + roll_rate * t, pitch0 + pitch_rate * t, t};
    if (with_rates) s.rates = RateMeasurement{roll_rate, pitch_rate, t};
    track.push_back(s);
  }
  return track;
}

const char* const kLogCsvHeader =
    "t,v_ref_x,v_ref_y,vx_true,vy_true,vx_est,vy_est,h_true,h_est,"
    "flow_x,flow_y,div_x,div_y,n_x,n_y,quality";

void write_csv(const std::vector<LogRow>& rows, std::ostream& out) {
  out << kLogCsvHeader << '\n';
  char buf[512];
  for (const LogRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%d,%d,",
                  r.t, r.v_ref_x, r.v_ref_y, r.vx_true, r.vy_true, r.vx_est, r.vy_est, r.h_true,
                  r.h_est, r.flow_x, r.flow_y, r.div_x, r.div_y, r.n_x, r.n_y);
    out << buf << to_string(r.quality) << '\n';
  }
}

std::vector<LogRow> run_open_loop(const std::vector<TrajectorySample>& track, const Scene& scene,
                                  const PipelineParams& params, const NoiseParams& noise,
                                  const FrameSink& sink) {
  VelocityPipeline pipeline(params);
  std::mt19937 rng(static_cast<uint32_t>(noise.seed));
  std::vector<LogRow> rows;
  rows.reserve(track.size());

  int index = 0;
  for (const TrajectorySample& s : track) {
    auto [left, right] = render_stereo(scene, s.pose, params.intrinsics);
    add_sensor_noise(left, noise.sigma, rng);
    add_sensor_noise(right, noise.sigma, rng);
    if (sink) sink(index, left, right, s.rates);
    const FrameEstimate est = pipeline.process(left, right, s.rates);
    rows.push_back(make_row(s.pose.timestamp, est, s.pose.z, s.vx_true, s.vy_true, 0.0, 0.0));
    ++index;
  }
  return rows;
}

std::vector<LogRow> run_closed_loop(const std::vector<ReferencePoint>& references, double duration,
                                    double height, const Scene& scene,
                                    const PipelineParams& params, const ControllerParams& ctrl,
                                    const NoiseParams& noise, const FrameSink& sink) {
  ctrl.validate();
  VelocityPipeline pipeline(params);
  std::mt19937 rng(static_cast<uint32_t>(noise.seed));

  const double dt = params.nominal_dt;
  const int ticks = static_cast<int>(std::llround(duration / dt));

  auto reference_at = [&references](double t) {
    double vx = 0.0, vy = 0.0;
    for (const ReferencePoint& r : references) {
      if (r.t > t) break;
      vx = r.vx;
      vy = r.vy;
    }
    return std::pair{vx, vy};
  };

  // vehicle state
  double px = 0.0, py = 0.0;
  double vx = 0.0, vy = 0.0;
  double pitch = 0.0, roll = 0.0;
  double pitch_prev = 0.0, roll_prev = 0.0;
  double integ_x = 0.0, integ_y = 0.0;
  double est_f_x = 0.0, est_f_y = 0.0;  // low-passed velocity estimate
  const double tilt_decay = std::exp(-dt / ctrl.attitude_tau);
  const double est_alpha =
      ctrl.estimate_tau > 0.0 ? 1.0 - std::exp(-dt / ctrl.estimate_tau) : 1.0;
  const double integ_limit = ctrl.ki > 0.0 ? ctrl.max_tilt / ctrl.ki : 0.0;

  std::vector<LogRow> rows;
  rows.reserve(static_cast<size_t>(ticks));

  for (int k = 0; k < ticks; ++k) {
    const double t = k * dt;
    if (std::abs(px) > kSceneBound || std::abs(py) > kSceneBound)
      throw SimDivergenceError("vehicle left the scene at position (" + std::to_string(px) + ", " +
                               std::to_string(py) + ")");

    const CameraPose pose{px, py, height, roll, pitch, t};
    auto [left, right] = render_stereo(scene, pose, params.intrinsics);
    add_sensor_noise(left, noise.sigma, rng);
    add_sensor_noise(right, noise.sigma, rng);

    // gyro: average body rates over the span since the previous frame
    std::optional<RateMeasurement> rates;
    if (k > 0) rates = RateMeasurement{(roll - roll_prev) / dt, (pitch - pitch_prev) / dt, t};
    if (sink) sink(k, left, right, rates);

    const FrameEstimate est = pipeline.process(left, right, rates);

    const auto [vref_x, vref_y] = reference_at(t);
    rows.push_back(make_row(t, est, height, vx, vy, vref_x, vref_y));

    // PI guidance on the filtered estimate -> tilt set-points
    est_f_x += (est.velocity.v_x - est_f_x) * est_alpha;
    est_f_y += (est.velocity.v_y - est_f_y) * est_alpha;
    const double err_x = vref_x - est_f_x;
    const double err_y = vref_y - est_f_y;
    integ_x = std::clamp(integ_x + err_x * dt, -integ_limit, integ_limit);
    integ_y = std::clamp(integ_y + err_y * dt, -integ_limit, integ_limit);
    const double pitch_sp = std::clamp(ctrl.kp * err_x + ctrl.ki * integ_x, -ctrl.max_tilt, ctrl.max_tilt);
    const double roll_sp = std::clamp(ctrl.kp * err_y + ctrl.ki * integ_y, -ctrl.max_tilt, ctrl.max_tilt);

    // first-order attitude response, then point mass with linear drag
    pitch_prev = pitch;
    roll_prev = roll;
    pitch = pitch_sp + (pitch - pitch_sp) * tilt_decay;
    roll = roll_sp + (roll - roll_sp) * tilt_decay;

    const double ax = kGravity * std::tan(pitch) - ctrl.drag * vx;
    const double ay = kGravity * std::tan(roll) - ctrl.drag * vy;
    vx += ax * dt;
    vy += ay * dt;
    px += vx * dt;
    py += vy * dt;
  }
  return rows;
}

Metrics metrics(const std::vector<double>& estimate, const std::vector<double>& truth,
                double frame_rate, double max_lag_seconds) {
  Metrics m;
  const size_t n = std::min(estimate.size(), truth.size());
  if (n == 0) return m;

  double se = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = estimate[i] - truth[i];
    se += d * d;
  }
  m.mse = se / static_cast<double>(n);

  double norm_e = 0.0, norm_t = 0.0;
  for (size_t i = 0; i < n; ++i) {
    norm_e += estimate[i] * estimate[i];
    norm_t += truth[i] * truth[i];
  }
  norm_e = std::sqrt(norm_e);
  norm_t = std::sqrt(norm_t);
  if (norm_e == 0.0 || norm_t == 0.0) {
    m.nmxm = 0.0;
    return m;
  }

  const long max_lag = std::min<long>(static_cast<long>(n) - 1,
                                      std::lround(max_lag_seconds * frame_rate));
  double best = 0.0;
  for (long lag = -max_lag; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const long j = static_cast<long>(i) + lag;
      if (j < 0 || j >= static_cast<long>(n)) continue;
      c += estimate[i] * truth[static_cast<size_t>(j)];
    }
    best = std::max(best, std::abs(c));
  }
  m.nmxm = best / (norm_e * norm_t);
  return m;
}

}  // namespace edgeflow::sim
