#pragma once

#include <cstdint>
#include <vector>

#include "edgeflow/histograms.hpp"

namespace edgeflow {

struct MatchParams {
  int window_size = 18;  // SAD window length in bins
  int max_search = 10;   // search distance in both directions around the predicted shift

  /// No matching is attempted closer to the histogram ends than this.
  int border_margin() const { return window_size / 2 + max_search; }

  void validate() const;
};

/// Per-position result of local matching. `displacements[i]` is the offset d
/// minimizing SAD between the current window at positions[i] and the previous
/// window at positions[i] + d: positive d means the scene content moved
/// toward lower bin indices, i.e. the camera advanced toward higher ones.
struct DisplacementProfile {
  std::vector<int> positions;
  std::vector<int> displacements;
  std::vector<int64_t> costs;

  int size() const { return static_cast<int>(positions.size()); }
};

struct LinearFlowFit {
  double translation = 0.0;   // fitted displacement at the midpoint of the matched span
  double divergence = 0.0;    // slope of displacement vs. position
  double residual_rms = 0.0;  // root-mean-square fit residual
};

/// Windowed SAD matching of `curr` against `prev` at every interior bin.
/// The search interval is [predicted_shift - max_search, predicted_shift +
/// max_search], clamped so both windows stay in bounds; positions where the
/// clamped interval is empty are skipped. Cost ties prefer the smallest |d|,
/// then the negative candidate.
DisplacementProfile match_local(const EdgeHistogram& prev, const EdgeHistogram& curr,
                                const MatchParams& params, int predicted_shift = 0);

/// Whole-histogram SAD over the overlapping region, normalized by overlap
/// length, minimized over disparity in [0, max_disparity]. Ties prefer the
/// smaller disparity. Throws TexturelessError when either histogram is all
/// zero.
int match_global(const EdgeHistogram& left, const EdgeHistogram& right, int max_disparity);

/// Ordinary least squares of displacement vs. position. The constant term is
/// evaluated at the midpoint of the matched span so it decouples from the
/// slope and equals the mean displacement for a symmetric position set.
LinearFlowFit fit_linear(const DisplacementProfile& profile);

}  // namespace edgeflow
