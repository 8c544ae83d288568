#pragma once

#include <string>

namespace edgeflow {

enum class Axis { Horizontal, Vertical };

inline const char* axis_name(Axis axis) {
  return axis == Axis::Horizontal ? "horizontal" : "vertical";
}

/// Per-frame estimate quality. Individual flags can co-occur (a textureless
/// scene usually loses the stereo height as well), so this is a flag set
/// rather than a single enum value.
struct QualityFlags {
  bool warmup = false;
  bool textureless_x = false;
  bool textureless_y = false;
  bool no_height = false;

  bool ok() const { return !warmup && !textureless_x && !textureless_y && !no_height; }

  bool operator==(const QualityFlags&) const = default;
};

/// Encodes flags as "ok" or a '+'-joined list, e.g. "warmup+no_height".
std::string to_string(const QualityFlags& q);

}  // namespace edgeflow
