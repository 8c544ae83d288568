#pragma once

#include <cstdint>

namespace edgeflow::sim {

/// Procedural ground-plane texture: seeded multi-octave value noise over
/// world coordinates in meters. Identical (seed, x, y) always yields the
/// identical sample on every platform (pure integer hashing inside).
///
/// The octave stack spans feature sizes from ~0.3 m down to ~2 cm so a camera
/// at roughly a meter of height sees both coarse blobs and pixel-scale
/// speckle, like a feature-rich ground mat.
struct Scene {
  uint64_t seed = 1;
  double contrast = 1.0;  // 0 disables texture entirely (uniform gray)

  /// Intensity in [0, 255] (continuous; quantization happens at render time).
  double sample(double x, double y) const;
};

}  // namespace edgeflow::sim
