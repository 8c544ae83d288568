#pragma once

#include <cstdint>
#include <vector>

#include "edgeflow/error.hpp"

namespace edgeflow {

/// Owned 8-bit grayscale raster, row-major. The minimum size of 3x3 keeps a
/// 3x3 gradient kernel applicable to at least one interior pixel row/column.
struct ImageFrame {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;
  double timestamp = 0.0;

  ImageFrame(int w, int h, std::vector<uint8_t> data, double t)
      : width(w), height(h), pixels(std::move(data)), timestamp(t) {
    if (width < 3 || height < 3)
      throw DimensionError("frame must be at least 3x3, got " + std::to_string(width) + "x" +
                           std::to_string(height));
    if (pixels.size() != static_cast<size_t>(width) * static_cast<size_t>(height))
      throw DimensionError("pixel buffer size does not match frame dimensions");
  }

  ImageFrame(int w, int h, double t) : ImageFrame(w, h, std::vector<uint8_t>(size_t(w) * size_t(h)), t) {}

  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }

  bool operator==(const ImageFrame&) const = default;
};

}  // namespace edgeflow
