#include "edgeflow/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/io/pgm.hpp"
#include "edgeflow/pipeline.hpp"
#include "edgeflow/sim/simulate.hpp"

namespace fs = std::filesystem;

namespace edgeflow::cli {

namespace {

std::string frame_name(const char* side, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.pgm", side, index);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// ---- sidecar files -------------------------------------------------------

std::map<int, RateMeasurement> read_rates_csv(const fs::path& path, double frame_rate) {
  std::map<int, RateMeasurement> rates;
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "frame,roll_rate,pitch_rate")
    throw IoError(path.string() + ": expected header 'frame,roll_rate,pitch_rate'");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    int frame = 0;
    double roll = 0.0, pitch = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &frame, &roll, &pitch) != 3)
      throw IoError(path.string() + ": bad row '" + line + "'");
    rates[frame] = RateMeasurement{roll, pitch, frame / frame_rate};
  }
  return rates;
}

struct TruthRow {
  double vx = 0.0, vy = 0.0, h = 0.0;
};

std::map<int, TruthRow> read_truth_csv(const fs::path& path) {
  std::map<int, TruthRow> truth;
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "frame,vx_true,vy_true,h_true")
    throw IoError(path.string() + ": expected header 'frame,vx_true,vy_true,h_true'");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    int frame = 0;
    TruthRow row;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &frame, &row.vx, &row.vy, &row.h) != 4)
      throw IoError(path.string() + ": bad row '" + line + "'");
    truth[frame] = row;
  }
  return truth;
}

void write_rows(const std::vector<sim::LogRow>& rows, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError(out_path + ": cannot open for writing");
  sim::write_csv(rows, out);
  if (!out) throw IoError(out_path + ": write failed");
}

// ---- scenario files ------------------------------------------------------

struct Scenario {
  std::string mode = "open";       // open | closed
  std::string traj = "constant";   // constant | sinusoid | rotation (open mode)
  double duration_s = 10.0;
  double height_m = 1.0;
  double vx = 0.0, vy = 0.0;       // velocity (constant) or amplitude (sinusoid)
  double period_s = 8.0;
  double pitch_rate = 0.0, roll_rate = 0.0;
  double pitch0 = 0.0, roll0 = 0.0;
  bool with_rates = true;
  std::vector<sim::ReferencePoint> references;
};

Scenario parse_scenario(std::istream& in, const std::string& path) {
  Scenario sc;
  std::string line;
  int line_no = 0;
  bool in_references = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[references]") {
      in_references = true;
      continue;
    }
    if (in_references) {
      sim::ReferencePoint ref;
      if (std::sscanf(line.c_str(), "%lf %lf %lf", &ref.t, &ref.vx, &ref.vy) != 3)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": reference rows are 't vx vy', got '" + line + "'");
      if (!sc.references.empty() && ref.t <= sc.references.back().t)
        throw ConfigError(path + ":" + std::to_string(line_no) + ": reference times must increase");
      sc.references.push_back(ref);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto num = [&]() {
      try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": bad number '" + value + "'");
      }
    };

    if (key == "mode") sc.mode = value;
    else if (key == "traj") sc.traj = value;
    else if (key == "duration_s") sc.duration_s = num();
    else if (key == "height_m") sc.height_m = num();
    else if (key == "vx") sc.vx = num();
    else if (key == "vy") sc.vy = num();
    else if (key == "period_s") sc.period_s = num();
    else if (key == "pitch_rate") sc.pitch_rate = num();
    else if (key == "roll_rate") sc.roll_rate = num();
    else if (key == "pitch0") sc.pitch0 = num();
    else if (key == "roll0") sc.roll0 = num();
    else if (key == "with_rates") sc.with_rates = num() != 0.0;
    else throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown scenario key '" + key + "'");
  }
  if (sc.mode != "open" && sc.mode != "closed")
    throw ConfigError(path + ": mode must be 'open' or 'closed'");
  if (sc.mode == "open" && sc.traj != "constant" && sc.traj != "sinusoid" && sc.traj != "rotation")
    throw ConfigError(path + ": traj must be constant, sinusoid or rotation");
  if (sc.duration_s <= 0.0) throw ConfigError(path + ": duration_s must be positive");
  if (sc.height_m <= 0.0) throw ConfigError(path + ": height_m must be positive");
  return sc;
}

}  // namespace

int cmd_replay(const std::string& input_dir, const Config& config, const std::string& out_path,
               std::ostream& err) {
  try {
    const fs::path dir(input_dir);
    const double fps = config.frame_rate;
    const double dt = 1.0 / fps;

    if (!fs::exists(dir / frame_name("left", 0)))
      throw IoError((dir / frame_name("left", 0)).string() + ": missing (no frames to replay)");
    const bool stereo = fs::exists(dir / frame_name("right", 0));

    std::map<int, RateMeasurement> rates;
    if (fs::exists(dir / "rates.csv")) rates = read_rates_csv(dir / "rates.csv", fps);
    std::map<int, TruthRow> truth;
    if (fs::exists(dir / "truth.csv")) truth = read_truth_csv(dir / "truth.csv");

    PipelineParams params = config.pipeline;
    params.nominal_dt = dt;
    VelocityPipeline pipeline(params);
    const int want_w = params.intrinsics.image_width;
    const int want_h = params.intrinsics.image_height;

    std::vector<sim::LogRow> rows;
    for (int index = 0;; ++index) {
      const fs::path left_path = dir / frame_name("left", index);
      if (!fs::exists(left_path)) break;

      ImageFrame left = io::read_pgm(left_path.string());
      left.timestamp = index * dt;
      if (left.width != want_w || left.height != want_h)
        throw IoError(left_path.string() + ": frame is " + std::to_string(left.width) + "x" +
                      std::to_string(left.height) + ", configured " + std::to_string(want_w) + "x" +
                      std::to_string(want_h));

      std::optional<RateMeasurement> frame_rates;
      if (auto it = rates.find(index); it != rates.end()) frame_rates = it->second;

      FrameEstimate est;
      if (stereo) {
        const fs::path right_path = dir / frame_name("right", index);
        if (!fs::exists(right_path))
          throw IoError(right_path.string() + ": stereo sequence is missing the right frame");
        ImageFrame right = io::read_pgm(right_path.string());
        right.timestamp = left.timestamp;
        if (right.width != want_w || right.height != want_h)
          throw IoError(right_path.string() + ": frame dimensions differ from configuration");
        est = pipeline.process(left, right, frame_rates);
      } else {
        est = pipeline.process(left, frame_rates);
      }

      TruthRow tr;
      if (auto it = truth.find(index); it != truth.end()) tr = it->second;
      sim::LogRow row;
      row.t = left.timestamp;
      row.vx_true = tr.vx;
      row.vy_true = tr.vy;
      row.h_true = tr.h;
      row.vx_est = est.velocity.v_x;
      row.vy_est = est.velocity.v_y;
      row.h_est = est.velocity.height;
      row.flow_x = est.flow.flow_x;
      row.flow_y = est.flow.flow_y;
      row.div_x = est.flow.divergence_x;
      row.div_y = est.flow.divergence_y;
      row.n_x = est.flow.horizon_n_x;
      row.n_y = est.flow.horizon_n_y;
      row.quality = est.velocity.quality;
      rows.push_back(row);
    }

    write_rows(rows, out_path);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int cmd_simulate(const std::string& scenario_path, const Config& config,
                 const std::string& out_path, const std::string& export_dir, std::ostream& err) {
  try {
    std::ifstream in(scenario_path);
    if (!in) throw ConfigError("cannot open scenario file " + scenario_path);
    const Scenario sc = parse_scenario(in, scenario_path);

    PipelineParams params = config.pipeline;
    params.nominal_dt = 1.0 / config.frame_rate;
    const sim::Scene scene{config.seed, config.texture_contrast};
    const sim::NoiseParams noise{config.noise_sigma, config.seed};
    const int frames = static_cast<int>(std::llround(sc.duration_s * config.frame_rate));

    sim::FrameSink sink;
    std::ofstream rates_csv;
    if (!export_dir.empty()) {
      fs::create_directories(export_dir);
      rates_csv.open(fs::path(export_dir) / "rates.csv");
      rates_csv << "frame,roll_rate,pitch_rate\n";
      sink = [&](int index, const ImageFrame& left, const ImageFrame& right,
                 const std::optional<RateMeasurement>& rates) {
        io::write_pgm((fs::path(export_dir) / frame_name("left", index)).string(), left);
        io::write_pgm((fs::path(export_dir) / frame_name("right", index)).string(), right);
        if (rates) {
          char buf[128];
          std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", index, rates->roll_rate,
                        rates->pitch_rate);
          rates_csv << buf;
        }
      };
    }

    std::vector<sim::LogRow> rows;
    if (sc.mode == "closed") {
      rows = sim::run_closed_loop(sc.references, sc.duration_s, sc.height_m, scene, params,
                                  config.controller, noise, sink);
    } else {
      std::vector<sim::TrajectorySample> track;
      if (sc.traj == "constant")
        track = sim::constant_velocity_track(sc.vx, sc.vy, sc.height_m, frames, config.frame_rate);
      else if (sc.traj == "sinusoid")
        track = sim::sinusoid_track(sc.vx, sc.vy, sc.period_s, sc.height_m, frames, config.frame_rate);
      else
        track = sim::pure_rotation_track(sc.pitch_rate, sc.roll_rate, sc.pitch0, sc.roll0,
                                         sc.height_m, frames, config.frame_rate, sc.with_rates);
      rows = sim::run_open_loop(track, scene, params, noise, sink);
    }

    if (!export_dir.empty()) {
      std::ofstream truth_csv(fs::path(export_dir) / "truth.csv");
      truth_csv << "frame,vx_true,vy_true,h_true\n";
      char buf[160];
      for (size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i, rows[i].vx_true,
                      rows[i].vy_true, rows[i].h_true);
        truth_csv << buf;
      }
    }

    write_rows(rows, out_path);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

BenchResult run_bench(const Config& config, long frames) {
  if (frames < 1) throw ConfigError("frame count must be at least 1");

  PipelineParams params = config.pipeline;
  params.nominal_dt = 1.0 / config.frame_rate;
  const sim::Scene scene{config.seed, config.texture_contrast};

  // Pre-render outside the timed region; the budget covers the pipeline only.
  const int distinct = static_cast<int>(std::min<long>(frames, 64));
  std::vector<std::pair<ImageFrame, ImageFrame>> rendered;
  rendered.reserve(static_cast<size_t>(distinct));
  const double step = 0.02;  // ~0.6 px/frame at 1 m
  for (int k = 0; k < distinct; ++k) {
    const sim::CameraPose pose{k * step, 0.0, 1.0, 0.0, 0.0, 0.0};
    rendered.push_back(sim::render_stereo(scene, pose, params.intrinsics));
  }

  VelocityPipeline pipeline(params);
  std::vector<double> ms;
  ms.reserve(static_cast<size_t>(frames));
  const double dt = params.nominal_dt;
  for (long k = 0; k < frames; ++k) {
    auto pair = rendered[static_cast<size_t>(k % distinct)];
    pair.first.timestamp = k * dt;
    pair.second.timestamp = k * dt;
    const auto t0 = std::chrono::steady_clock::now();
    pipeline.process(pair.first, pair.second);
    const auto t1 = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }

  BenchResult result;
  result.frames = frames;
  double sum = 0.0;
  for (double v : ms) sum += v;
  result.mean_ms = sum / static_cast<double>(frames);
  std::sort(ms.begin(), ms.end());
  const size_t p99_index = static_cast<size_t>(std::ceil(0.99 * static_cast<double>(frames))) - 1;
  result.p99_ms = ms[std::min(p99_index, ms.size() - 1)];
  return result;
}

int cmd_bench(const Config& config, long frames, std::ostream& out, std::ostream& err) {
  try {
    const BenchResult r = run_bench(config, frames);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "frames=%ld mean_ms=%.4f p99_ms=%.4f\n", r.frames, r.mean_ms,
                  r.p99_ms);
    out << buf;
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace edgeflow::cli
