#include "edgeflow/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "edgeflow/error.hpp"

namespace edgeflow {

void Config::validate() const {
  pipeline.validate();
  controller.validate();
  if (frame_rate <= 0.0) throw ConfigError("frame_rate_hz must be positive");
  if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be non-negative");
  if (texture_contrast < 0.0) throw ConfigError("texture_contrast must be non-negative");
}

Config default_config() { return Config{}; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + value + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "fov_h_deg") cfg.pipeline.intrinsics.fov_horizontal = deg2rad(to_double(key, value));
    else if (key == "fov_v_deg") cfg.pipeline.intrinsics.fov_vertical = deg2rad(to_double(key, value));
    else if (key == "image_width") cfg.pipeline.intrinsics.image_width = static_cast<int>(to_long(key, value));
    else if (key == "image_height") cfg.pipeline.intrinsics.image_height = static_cast<int>(to_long(key, value));
    else if (key == "stereo_baseline_m") cfg.pipeline.intrinsics.stereo_baseline = to_double(key, value);
    else if (key == "window_size") cfg.pipeline.match.window_size = static_cast<int>(to_long(key, value));
    else if (key == "max_search") cfg.pipeline.match.max_search = static_cast<int>(to_long(key, value));
    else if (key == "ring_capacity") cfg.pipeline.ring_capacity = static_cast<int>(to_long(key, value));
    else if (key == "stereo_max_disparity") cfg.pipeline.max_disparity = static_cast<int>(to_long(key, value));
    else if (key == "height_median_window") cfg.pipeline.height_median = static_cast<int>(to_long(key, value));
    else if (key == "frame_rate_hz") cfg.frame_rate = to_double(key, value);
    else if (key == "noise_sigma") cfg.noise_sigma = to_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(to_long(key, value));
    else if (key == "texture_contrast") cfg.texture_contrast = to_double(key, value);
    else if (key == "kp") cfg.controller.kp = to_double(key, value);
    else if (key == "ki") cfg.controller.ki = to_double(key, value);
    else if (key == "max_tilt_deg") cfg.controller.max_tilt = deg2rad(to_double(key, value));
    else if (key == "attitude_tau_s") cfg.controller.attitude_tau = to_double(key, value);
    else if (key == "drag_coeff") cfg.controller.drag = to_double(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  cfg.pipeline.nominal_dt = 1.0 / cfg.frame_rate;
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

std::string serialize_config(const Config& c) {
  std::ostringstream out;
  out << "fov_h_deg = " << format_double(rad2deg(c.pipeline.intrinsics.fov_horizontal)) << '\n'
      << "fov_v_deg = " << format_double(rad2deg(c.pipeline.intrinsics.fov_vertical)) << '\n'
      << "image_width = " << c.pipeline.intrinsics.image_width << '\n'
      << "image_height = " << c.pipeline.intrinsics.image_height << '\n'
      << "stereo_baseline_m = " << format_double(c.pipeline.intrinsics.stereo_baseline) << '\n'
      << "window_size = " << c.pipeline.match.window_size << '\n'
      << "max_search = " << c.pipeline.match.max_search << '\n'
      << "ring_capacity = " << c.pipeline.ring_capacity << '\n'
      << "stereo_max_disparity = " << c.pipeline.max_disparity << '\n'
      << "height_median_window = " << c.pipeline.height_median << '\n'
      << "frame_rate_hz = " << format_double(c.frame_rate) << '\n'
      << "noise_sigma = " << format_double(c.noise_sigma) << '\n'
      << "seed = " << c.seed << '\n'
      << "texture_contrast = " << format_double(c.texture_contrast) << '\n'
      << "kp = " << format_double(c.controller.kp) << '\n'
      << "ki = " << format_double(c.controller.ki) << '\n'
      << "max_tilt_deg = " << format_double(rad2deg(c.controller.max_tilt)) << '\n'
      << "attitude_tau_s = " << format_double(c.controller.attitude_tau) << '\n'
      << "drag_coeff = " << format_double(c.controller.drag) << '\n';
  return out.str();
}

}  // namespace edgeflow
