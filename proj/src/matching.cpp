#include "edgeflow/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "edgeflow/error.hpp"

namespace edgeflow {

void MatchParams::validate() const {
  if (window_size < 1) throw ConfigError("window size must be at least 1 bin");
  if (max_search < 1) throw ConfigError("max search distance must be at least 1 pixel");
}

namespace {

int64_t window_sad(const int64_t* a, const int64_t* b, int len) {
  int64_t sum = 0;
  for (int i = 0; i < len; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

// cost first, then smallest |d|, then negative d
bool candidate_better(int64_t cost, int d, int64_t best_cost, int best_d) {
  if (cost != best_cost) return cost < best_cost;
  if (std::abs(d) != std::abs(best_d)) return std::abs(d) < std::abs(best_d);
  return d < best_d;
}

}  // namespace

DisplacementProfile match_local(const EdgeHistogram& prev, const EdgeHistogram& curr,
                                const MatchParams& params, int predicted_shift) {
  params.validate();
  if (prev.axis != curr.axis)
    throw MatchError(std::string("axis mismatch: ") + axis_name(prev.axis) + " vs " +
                     axis_name(curr.axis));
  if (prev.length() != curr.length())
    throw MatchError("histogram length mismatch: " + std::to_string(prev.length()) + " vs " +
                     std::to_string(curr.length()));

  const int len = curr.length();
  const int half_lo = params.window_size / 2;
  const int half_hi = params.window_size - half_lo;
  const int margin = params.border_margin();

  auto all_zero = [](const EdgeHistogram& h) {
    return std::all_of(h.bins.begin(), h.bins.end(), [](int64_t b) { return b == 0; });
  };
  if (all_zero(prev) || all_zero(curr))
    throw TexturelessError("no gradient energy; displacement undefined");

  DisplacementProfile profile;
  if (2 * margin >= len) throw MatchError("histogram too short for window and search range");

  const int64_t* pb = prev.bins.data();
  const int64_t* cb = curr.bins.data();

  for (int p = margin; p < len - margin; ++p) {
    // keep the previous-histogram window [p+d-half_lo, p+d+half_hi) in bounds
    const int d_lo = std::max(predicted_shift - params.max_search, half_lo - p);
    const int d_hi = std::min(predicted_shift + params.max_search, len - half_hi - p);
    if (d_lo > d_hi) continue;

    int best_d = 0;
    int64_t best_cost = std::numeric_limits<int64_t>::max();
    bool have_best = false;
    for (int d = d_lo; d <= d_hi; ++d) {
      int64_t cost = window_sad(cb + (p - half_lo), pb + (p + d - half_lo), params.window_size);
      if (!have_best || candidate_better(cost, d, best_cost, best_d)) {
        best_cost = cost;
        best_d = d;
        have_best = true;
      }
    }
    profile.positions.push_back(p);
    profile.displacements.push_back(best_d);
    profile.costs.push_back(best_cost);
  }

  if (profile.positions.empty())
    throw MatchError("no valid match positions (shift " + std::to_string(predicted_shift) +
                     ", length " + std::to_string(len) + ")");
  return profile;
}

int match_global(const EdgeHistogram& left, const EdgeHistogram& right, int max_disparity) {
  if (max_disparity < 1) throw ConfigError("max disparity must be at least 1");
  if (left.axis != right.axis)
    throw MatchError(std::string("axis mismatch: ") + axis_name(left.axis) + " vs " +
                     axis_name(right.axis));
  if (left.length() != right.length())
    throw MatchError("histogram length mismatch: " + std::to_string(left.length()) + " vs " +
                     std::to_string(right.length()));

  const int len = left.length();
  auto all_zero = [](const EdgeHistogram& h) {
    return std::all_of(h.bins.begin(), h.bins.end(), [](int64_t b) { return b == 0; });
  };
  if (all_zero(left) || all_zero(right)) throw TexturelessError("no gradient energy to match");

  int best_d = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  const int d_max = std::min(max_disparity, len - 1);
  for (int d = 0; d <= d_max; ++d) {
    const int overlap = len - d;
    int64_t sad = 0;
    for (int i = 0; i < overlap; ++i) sad += std::abs(left.bins[i + d] - right.bins[i]);
    // normalize so short overlaps at large disparity compete fairly
    double cost = static_cast<double>(sad) / overlap;
    if (cost < best_cost) {
      best_cost = cost;
      best_d = d;
    }
  }
  return best_d;
}

LinearFlowFit fit_linear(const DisplacementProfile& profile) {
  const int n = profile.size();
  if (n < 2) throw FitError("need at least 2 matched positions, got " + std::to_string(n));

  double mean_p = 0.0, mean_d = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_p += profile.positions[i];
    mean_d += profile.displacements[i];
  }
  mean_p /= n;
  mean_d /= n;

  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dp = profile.positions[i] - mean_p;
    sxx += dp * dp;
    sxy += dp * (profile.displacements[i] - mean_d);
  }
  if (sxx == 0.0) throw FitError("all match positions identical; slope undefined");

  LinearFlowFit fit;
  fit.divergence = sxy / sxx;
  const double midpoint = (profile.positions.front() + profile.positions.back()) / 2.0;
  fit.translation = mean_d + fit.divergence * (midpoint - mean_p);

  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double predicted = mean_d + fit.divergence * (profile.positions[i] - mean_p);
    const double r = profile.displacements[i] - predicted;
    ss_res += r * r;
  }
  fit.residual_rms = std::sqrt(ss_res / n);
  return fit;
}

}  // namespace edgeflow
