#include <doctest.h>

#include <random>

#include "edgeflow/error.hpp"
#include "edgeflow/matching.hpp"
#include "oracles.hpp"

using namespace edgeflow;

namespace {

EdgeHistogram from_values(std::vector<int64_t> bins, Axis axis = Axis::Horizontal, double t = 0.0) {
  EdgeHistogram h;
  h.axis = axis;
  h.bins = std::move(bins);
  h.timestamp = t;
  return h;
}

}  // namespace

TEST_CASE("identity match: zero displacement, zero cost") {
  std::mt19937 rng(11);
  const EdgeHistogram h = oracles::random_histogram(rng, 128, 0, 5000);
  const DisplacementProfile profile = match_local(h, h, MatchParams{});
  CHECK(profile.size() == 128 - 2 * MatchParams{}.border_margin());
  for (int i = 0; i < profile.size(); ++i) {
    REQUIRE(profile.displacements[static_cast<size_t>(i)] == 0);
    REQUIRE(profile.costs[static_cast<size_t>(i)] == 0);
  }
}

TEST_CASE("circular shift by +3 is recovered exactly away from the wrap seam") {
  std::mt19937 rng(12);
  const EdgeHistogram prev = oracles::random_histogram(rng, 128, 0, 5000);
  EdgeHistogram curr = prev;
  const int len = 128, k = 3;
  for (int i = 0; i < len; ++i)
    curr.bins[static_cast<size_t>(i)] = prev.bins[static_cast<size_t>((i + k) % len)];

  const MatchParams params;
  const DisplacementProfile profile = match_local(prev, curr, params);
  // windows touching the wrapped tail [len-k, len) see stitched content
  const int seam_start = len - k - params.border_margin();
  for (int i = 0; i < profile.size(); ++i) {
    if (profile.positions[static_cast<size_t>(i)] >= seam_start) continue;
    REQUIRE(profile.displacements[static_cast<size_t>(i)] == k);
    REQUIRE(profile.costs[static_cast<size_t>(i)] == 0);
  }

  // exhaustive check at one interior position: +3 is the unique zero-cost argmin
  auto brute = oracles::brute_match_local(prev, curr, params.window_size, params.max_search, 0);
  CHECK(brute.displacements[10] == k);
}

TEST_CASE("offset search window still finds the identity optimum") {
  std::mt19937 rng(13);
  const EdgeHistogram h = oracles::random_histogram(rng, 128, 0, 5000);
  const DisplacementProfile profile = match_local(h, h, MatchParams{}, +4);
  for (int i = 0; i < profile.size(); ++i)
    REQUIRE(profile.displacements[static_cast<size_t>(i)] == 0);
}

TEST_CASE("local match input validation") {
  std::mt19937 rng(14);
  const EdgeHistogram a = oracles::random_histogram(rng, 128, 0, 100);
  const EdgeHistogram b = oracles::random_histogram(rng, 120, 0, 100);
  CHECK_THROWS_AS(match_local(a, b, MatchParams{}), MatchError);

  EdgeHistogram v = a;
  v.axis = Axis::Vertical;
  CHECK_THROWS_AS(match_local(a, v, MatchParams{}), MatchError);

  // 2 * margin >= length leaves no valid positions
  const EdgeHistogram tiny = oracles::random_histogram(rng, 38, 0, 100);
  CHECK_THROWS_AS(match_local(tiny, tiny, MatchParams{}), MatchError);

  // a predicted shift far beyond the histogram leaves no in-bounds window
  const EdgeHistogram c = oracles::random_histogram(rng, 128, 0, 100);
  CHECK_THROWS_AS(match_local(c, c, MatchParams{}, 1000), MatchError);

  const EdgeHistogram zero = from_values(std::vector<int64_t>(128, 0));
  CHECK_THROWS_AS(match_local(zero, zero, MatchParams{}), TexturelessError);
  CHECK_THROWS_AS(match_local(zero, c, MatchParams{}), TexturelessError);
}

TEST_CASE("property: match_local equals the brute-force scan, ties included") {
  std::mt19937 rng(2024);
  const MatchParams params;
  for (int trial = 0; trial < 60; ++trial) {
    const bool tie_rich = trial % 3 == 0;
    const EdgeHistogram prev = tie_rich ? oracles::plateau_histogram(rng, 128)
                                        : oracles::random_histogram(rng, 128, 0, 2000);
    const EdgeHistogram curr = tie_rich ? oracles::plateau_histogram(rng, 128)
                                        : oracles::random_histogram(rng, 128, 0, 2000);
    const int shift = trial % 5 == 0 ? (trial % 2 ? 4 : -6) : 0;

    const DisplacementProfile got = match_local(prev, curr, params, shift);
    const auto want = oracles::brute_match_local(prev, curr, params.window_size, params.max_search,
                                                 shift);
    REQUIRE(got.positions == want.positions);
    REQUIRE(got.displacements == want.displacements);
    REQUIRE(got.costs == want.costs);
  }
}

TEST_CASE("property: costs are non-negative, zero exactly for identical windows") {
  std::mt19937 rng(77);
  const EdgeHistogram prev = oracles::random_histogram(rng, 128, 1, 4000);
  EdgeHistogram curr = prev;
  curr.bins[64] += 1;  // perturb one bin
  const DisplacementProfile profile = match_local(prev, curr, MatchParams{});
  for (int i = 0; i < profile.size(); ++i) {
    const int p = profile.positions[static_cast<size_t>(i)];
    const int64_t cost = profile.costs[static_cast<size_t>(i)];
    REQUIRE(cost >= 0);
    const bool window_touches_perturbation =
        p - 9 <= 64 && 64 < p + 9 && profile.displacements[static_cast<size_t>(i)] == 0;
    if (!window_touches_perturbation) continue;
    REQUIRE(cost > 0);
  }
}

TEST_CASE("property: translation is antisymmetric within a pixel") {
  std::mt19937 rng(31);
  for (int k : {-7, -2, 3, 8}) {
    std::vector<int64_t> base(160);
    std::uniform_int_distribution<int64_t> dist(0, 4000);
    for (auto& b : base) b = dist(rng);
    const auto a = oracles::shifted_from_base(base, 16, 128, Axis::Horizontal, 0.0);
    const auto b = oracles::shifted_from_base(base, 16 + k, 128, Axis::Horizontal, 0.0);
    const double t_ab = fit_linear(match_local(a, b, MatchParams{})).translation;
    const double t_ba = fit_linear(match_local(b, a, MatchParams{})).translation;
    CHECK(t_ab == doctest::Approx(k).epsilon(0.2));
    CHECK(std::abs(t_ab + t_ba) <= 1.0);
  }
}

TEST_CASE("global match: identical histograms give zero disparity") {
  std::mt19937 rng(55);
  const EdgeHistogram h = oracles::random_histogram(rng, 128, 0, 3000);
  CHECK(match_global(h, h, 26) == 0);
}

TEST_CASE("global match: 7-bin shift gives disparity 7") {
  std::mt19937 rng(56);
  std::vector<int64_t> base(160);
  std::uniform_int_distribution<int64_t> dist(0, 4000);
  for (auto& b : base) b = dist(rng);
  const auto left = oracles::shifted_from_base(base, 0, 128, Axis::Horizontal, 0.0);
  const auto right = oracles::shifted_from_base(base, 7, 128, Axis::Horizontal, 0.0);

  CHECK(match_global(left, right, 26) == 7);

  // exhaustive confirmation that 7 is the unique zero of the normalized cost
  for (int d = 0; d <= 26; ++d) {
    int64_t sad = 0;
    for (int i = 0; i + d < 128; ++i) sad += std::abs(left.bins[i + d] - right.bins[i]);
    if (d == 7) REQUIRE(sad == 0);
    else REQUIRE(sad > 0);
  }
}

TEST_CASE("global match error paths") {
  const EdgeHistogram zero = from_values(std::vector<int64_t>(128, 0));
  CHECK_THROWS_AS(match_global(zero, zero, 26), TexturelessError);

  std::mt19937 rng(57);
  const EdgeHistogram a = oracles::random_histogram(rng, 128, 0, 100);
  const EdgeHistogram b = oracles::random_histogram(rng, 96, 0, 100);
  CHECK_THROWS_AS(match_global(a, b, 26), MatchError);
  CHECK_THROWS_AS(match_global(a, a, 0), ConfigError);
}

TEST_CASE("fit: constant displacement") {
  DisplacementProfile profile;
  for (int p : {20, 30, 40, 50, 60}) {
    profile.positions.push_back(p);
    profile.displacements.push_back(2);
    profile.costs.push_back(0);
  }
  const LinearFlowFit fit = fit_linear(profile);
  CHECK(fit.translation == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.divergence == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.residual_rms == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit: exact line through -5..+5 has zero translation at the midpoint") {
  DisplacementProfile profile;
  const int n = 11;
  for (int i = 0; i < n; ++i) {
    profile.positions.push_back(20 + 10 * i);  // span 100
    profile.displacements.push_back(-5 + i);
  }
  profile.costs.assign(n, 0);
  const LinearFlowFit fit = fit_linear(profile);
  CHECK(fit.translation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.divergence == doctest::Approx(10.0 / 100.0).epsilon(1e-12));
  CHECK(fit.residual_rms == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit: worked 4-point example") {
  DisplacementProfile profile;
  profile.positions = {20, 40, 60, 80};
  profile.displacements = {1, 1, 2, 2};
  profile.costs = {0, 0, 0, 0};
  const LinearFlowFit fit = fit_linear(profile);
  // by hand: slope = 40/2000, value at midpoint 50 = mean = 1.5,
  // residuals (+0.1, -0.3, +0.3, -0.1) -> rms = sqrt(0.2/4)
  CHECK(fit.translation == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.divergence == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(fit.residual_rms == doctest::Approx(std::sqrt(0.05)).epsilon(1e-12));
}

TEST_CASE("fit rejects degenerate profiles") {
  DisplacementProfile one;
  one.positions = {30};
  one.displacements = {1};
  one.costs = {0};
  CHECK_THROWS_AS(fit_linear(one), FitError);

  DisplacementProfile flat;
  flat.positions = {30, 30, 30};
  flat.displacements = {1, 2, 3};
  flat.costs = {0, 0, 0};
  CHECK_THROWS_AS(fit_linear(flat), FitError);
}

TEST_CASE("property: fit matches an independently solved normal system") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> disp(-10, 10);
  for (int trial = 0; trial < 40; ++trial) {
    DisplacementProfile profile;
    for (int p = 19; p < 109; p += 1 + trial % 3) {
      profile.positions.push_back(p);
      profile.displacements.push_back(disp(rng));
      profile.costs.push_back(0);
    }
    const LinearFlowFit fit = fit_linear(profile);
    const auto line = oracles::brute_least_squares(profile.positions, profile.displacements);
    const double mid = (profile.positions.front() + profile.positions.back()) / 2.0;
    const double want_translation = line.intercept + line.slope * mid;
    REQUIRE(fit.divergence == doctest::Approx(line.slope).epsilon(1e-9));
    REQUIRE(fit.translation == doctest::Approx(want_translation).epsilon(1e-9));
  }
}
