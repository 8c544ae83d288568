#include "edgeflow/histograms.hpp"

#include <cstdlib>

#include "edgeflow/error.hpp"

namespace edgeflow {

GradientImage sobel_gradient(const ImageFrame& frame, Axis axis) {
  if (frame.width < 3 || frame.height < 3)
    throw DimensionError("sobel kernel needs at least a 3x3 frame");

  GradientImage out;
  out.axis = axis;
  out.width = frame.width;
  out.height = frame.height;
  out.timestamp = frame.timestamp;
  out.values.assign(static_cast<size_t>(frame.width) * frame.height, 0);

  const int w = frame.width;
  const uint8_t* px = frame.pixels.data();

  // Border stays zero; only interior pixels get a response.
  for (int y = 1; y < frame.height - 1; ++y) {
    const uint8_t* up = px + static_cast<size_t>(y - 1) * w;
    const uint8_t* mid = px + static_cast<size_t>(y) * w;
    const uint8_t* down = px + static_cast<size_t>(y + 1) * w;
    int32_t* row = out.values.data() + static_cast<size_t>(y) * w;
    if (axis == Axis::Horizontal) {
      for (int x = 1; x < w - 1; ++x) {
        int32_t g = (up[x + 1] + 2 * mid[x + 1] + down[x + 1]) -
                    (up[x - 1] + 2 * mid[x - 1] + down[x - 1]);
        row[x] = std::abs(g);
      }
    } else {
      for (int x = 1; x < w - 1; ++x) {
        int32_t g = (down[x - 1] + 2 * down[x] + down[x + 1]) -
                    (up[x - 1] + 2 * up[x] + up[x + 1]);
        row[x] = std::abs(g);
      }
    }
  }
  return out;
}

EdgeHistogram edge_histogram(const GradientImage& gradient, Axis axis) {
  if (gradient.axis != axis)
    throw Error(std::string("gradient was computed for the ") + axis_name(gradient.axis) +
                " axis, histogram requested for " + axis_name(axis));

  EdgeHistogram hist;
  hist.axis = axis;
  hist.timestamp = gradient.timestamp;

  if (axis == Axis::Horizontal) {
    hist.bins.assign(static_cast<size_t>(gradient.width), 0);
    for (int y = 0; y < gradient.height; ++y) {
      const int32_t* row = gradient.values.data() + static_cast<size_t>(y) * gradient.width;
      for (int x = 0; x < gradient.width; ++x) hist.bins[static_cast<size_t>(x)] += row[x];
    }
  } else {
    hist.bins.assign(static_cast<size_t>(gradient.height), 0);
    for (int y = 0; y < gradient.height; ++y) {
      const int32_t* row = gradient.values.data() + static_cast<size_t>(y) * gradient.width;
      int64_t sum = 0;
      for (int x = 0; x < gradient.width; ++x) sum += row[x];
      hist.bins[static_cast<size_t>(y)] = sum;
    }
  }
  return hist;
}

std::pair<EdgeHistogram, EdgeHistogram> histograms_of(const ImageFrame& frame) {
  return {edge_histogram(sobel_gradient(frame, Axis::Horizontal), Axis::Horizontal),
          edge_histogram(sobel_gradient(frame, Axis::Vertical), Axis::Vertical)};
}

}  // namespace edgeflow
