#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "edgeflow/image.hpp"
#include "edgeflow/types.hpp"

namespace edgeflow {

/// Absolute single-axis gradient magnitudes, same dimensions as the source
/// frame. The 1-pixel border is always zero.
struct GradientImage {
  Axis axis = Axis::Horizontal;
  int width = 0;
  int height = 0;
  std::vector<int32_t> values;
  double timestamp = 0.0;

  int32_t at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
};

/// 1-D compression of frame structure: per-column (Horizontal) or per-row
/// (Vertical) sums of gradient magnitude. Bins are exact wide integers; two
/// histograms from the same pipeline are directly comparable under SAD.
struct EdgeHistogram {
  Axis axis = Axis::Horizontal;
  std::vector<int64_t> bins;
  double timestamp = 0.0;

  int length() const { return static_cast<int>(bins.size()); }

  bool operator==(const EdgeHistogram&) const = default;
};

/// |Sobel| response along the requested axis. Horizontal differentiates
/// across columns (responds to vertical edges), Vertical across rows.
GradientImage sobel_gradient(const ImageFrame& frame, Axis axis);

/// Axis-wise summation of a gradient image: Horizontal -> column sums (one
/// bin per column), Vertical -> row sums (one bin per row).
EdgeHistogram edge_histogram(const GradientImage& gradient, Axis axis);

/// Convenience: both per-axis histograms of a frame.
std::pair<EdgeHistogram, EdgeHistogram> histograms_of(const ImageFrame& frame);

}  // namespace edgeflow
