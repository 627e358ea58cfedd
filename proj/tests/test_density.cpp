#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "rtset/density.hpp"

using namespace rtset;

namespace {

DensityProfile default_profile(const NatSet& a) {
  auto lengths = default_window_lengths(a.horizon());
  auto points = default_log_points(a.horizon());
  return DensityProfile::compute(a, lengths, points);
}

}  // namespace

TEST_CASE("profile invariants on random sets") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 10; ++iter) {
    std::int64_t h = 500 + static_cast<std::int64_t>(rng() % 2000);
    NatSet a = helpers::random_set(h, 0.2 + 0.6 * (iter / 10.0), rng);
    DensityProfile p = default_profile(a);
    for (std::int64_t n = 1; n <= h; ++n) {
      std::int64_t c = p.prefix_count(n);
      CHECK(c >= 0);
      CHECK(c <= n);
      std::int64_t step = c - p.prefix_count(n - 1);
      CHECK(step >= 0);
      CHECK(step <= 1);
    }
    for (const WindowStat& w : p.windows()) {
      CHECK(w.min_count <= p.prefix_count(w.length));
      CHECK(p.prefix_count(w.length) <= w.max_count);
    }
  }
}

TEST_CASE("window maxima are subadditive across lengths") {
  std::mt19937_64 rng(77);
  NatSet a = helpers::random_set(4000, 0.4, rng);
  std::vector<std::int64_t> lengths{3, 5, 8, 13, 21, 34};
  DensityProfile p = DensityProfile::compute(a, lengths, std::vector<std::int64_t>{10});
  auto wplus = [&](std::int64_t n) {
    for (const WindowStat& w : p.windows())
      if (w.length == n) return w.max_count;
    REQUIRE(false);
    return std::int64_t{0};
  };
  CHECK(wplus(8) <= wplus(3) + wplus(5));
  CHECK(wplus(13) <= wplus(5) + wplus(8));
  CHECK(wplus(21) <= wplus(8) + wplus(13));
  CHECK(wplus(34) <= wplus(13) + wplus(21));
}

TEST_CASE("evens: prefix ratios, window maxima, banach estimate") {
  const std::int64_t h = 100000;
  NatSet evens = helpers::periodic(h, 2);
  DensityProfile p = default_profile(evens);
  for (std::int64_t n : {1, 2, 3, 17, 1000, 99999}) {
    double r = static_cast<double>(p.prefix_count(n)) / n;
    CHECK(std::abs(r - 0.5) <= 1.0 / n);
  }
  for (const WindowStat& w : p.windows())
    CHECK(w.max_count == (w.length + 1) / 2);  // ceil(n/2), periodicity
  DensityEstimates est = density_estimates(p, 0.5);
  CHECK(est.banach_upper.value == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("empty set: all counts zero") {
  NatSet empty(1000);
  DensityProfile p = default_profile(empty);
  CHECK(p.prefix_count(1000) == 0);
  for (const WindowStat& w : p.windows()) {
    CHECK(w.max_count == 0);
    CHECK(w.min_count == 0);
  }
  for (const HarmonicStat& hs : p.harmonics()) CHECK(hs.sum == 0.0);
}

TEST_CASE("runs spec: full short windows but vanishing prefix density") {
  const std::int64_t h = 100000;
  NatSet runs = helpers::pow2_runs(h);
  // Direct count on the generated set: once a run of length >= n exists,
  // the best window of length n is full.
  std::vector<std::int64_t> lengths{1, 2, 4, 8, 16};
  DensityProfile p = DensityProfile::compute(
      runs, lengths, std::vector<std::int64_t>{10, 100, 1000, 10000, 100000});
  for (const WindowStat& w : p.windows()) CHECK(w.max_count == w.length);
  DensityEstimates est = density_estimates(p, 0.5);
  CHECK(est.banach_upper.value == 1.0);
  CHECK(est.upper_density.value < 0.01);
  CHECK(est.banach_upper.value >= est.upper_density.value);
}

TEST_CASE("harmonic sums match an independent accumulation and the log bound") {
  const std::int64_t h = 1000000;
  NatSet all = set_complement(NatSet(h));
  std::vector<std::int64_t> lengths{h / 4};
  auto points = default_log_points(h);
  DensityProfile p = DensityProfile::compute(all, lengths, points);
  for (const HarmonicStat& hs : p.harmonics()) {
    // Independent oracle: long double forward sum over A = [0, h).
    long double acc = 0.0L;
    for (std::int64_t j = 1; j <= std::min(hs.point, h - 1); ++j) acc += 1.0L / j;
    CHECK(std::abs(hs.sum - static_cast<double>(acc)) <=
          1e-12 * (1.0 + std::abs(hs.sum)));
    // Raw ratio h(N)/ln N carries the harmonic-number offset: within 2/ln N
    // of 1 (H_N = ln N + gamma + O(1/N)).
    if (hs.point >= 10) {
      double ln_n = std::log(static_cast<double>(hs.point));
      CHECK(std::abs(hs.sum / ln_n - 1.0) <= 2.0 / ln_n);
    }
  }
  DensityEstimates est = density_estimates(p, 0.5);
  CHECK(est.log_slope_based);
  CHECK(est.log_upper.value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(est.log_lower.value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("periodic sets: all six estimates near 1/d") {
  const std::int64_t h = 100000;
  for (std::int64_t d : {2, 3, 5, 10}) {
    DensityProfile p = default_profile(helpers::periodic(h, d));
    DensityEstimates est = density_estimates(p, 0.25);
    double target = 1.0 / static_cast<double>(d);
    CHECK(std::abs(est.lower_density.value - target) <= 1e-3);
    CHECK(std::abs(est.upper_density.value - target) <= 1e-3);
    CHECK(std::abs(est.banach_lower.value - target) <= 1e-3);
    CHECK(std::abs(est.banach_upper.value - target) <= 1e-3);
    CHECK(std::abs(est.log_lower.value - target) <= 1e-3);
    CHECK(std::abs(est.log_upper.value - target) <= 1e-3);
  }
}

TEST_CASE("estimate chain on convergent-by-construction families") {
  const std::int64_t h = 100000;
  const double slack = 10.0 / std::sqrt(static_cast<double>(h));
  std::vector<NatSet> sets;
  for (std::int64_t d : {2, 3, 5, 10}) sets.push_back(helpers::periodic(h, d));
  sets.push_back(set_union(helpers::periodic(h, 6), helpers::periodic(h, 10, 3)));
  sets.push_back(helpers::pow2_runs(h));
  for (const NatSet& a : sets) {
    DensityProfile p = default_profile(a);
    DensityEstimates e = density_estimates(p, 0.5);
    CHECK(e.banach_lower.value <= e.lower_density.value + slack);
    CHECK(e.lower_density.value <= e.log_lower.value + slack);
    CHECK(e.log_lower.value <= e.log_upper.value + slack);
    CHECK(e.log_upper.value <= e.upper_density.value + slack);
    CHECK(e.upper_density.value <= e.banach_upper.value + slack);
  }
}

TEST_CASE("exact finite-horizon chain holds for every computed window") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 25; ++iter) {
    NatSet a = helpers::random_set(3000, 0.1 + 0.03 * iter, rng);
    DensityProfile p = default_profile(a);
    for (const WindowStat& w : p.windows()) {
      CHECK(w.min_count <= p.prefix_count(w.length));
      CHECK(p.prefix_count(w.length) <= w.max_count);
    }
  }
}

TEST_CASE("sliding window engine equals the naive recount") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 6; ++iter) {
    NatSet a = helpers::random_set(2000, 0.15 * (iter + 1), rng);
    std::vector<std::int64_t> lengths{1, 7, 50, 333};
    DensityProfile p =
        DensityProfile::compute(a, lengths, std::vector<std::int64_t>{100});
    for (const WindowStat& w : p.windows()) {
      auto [mx, mn] = helpers::naive_window_extrema(a, w.length);
      CHECK(w.max_count == mx);
      CHECK(w.min_count == mn);
    }
  }
}

TEST_CASE("profile and estimate error paths") {
  NatSet a = helpers::periodic(100, 3);
  CHECK_THROWS_AS(
      DensityProfile::compute(a, std::vector<std::int64_t>{}, std::vector<std::int64_t>{10}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      DensityProfile::compute(a, std::vector<std::int64_t>{200}, std::vector<std::int64_t>{10}),
      std::invalid_argument);
  DensityProfile p = DensityProfile::compute(a, std::vector<std::int64_t>{8},
                                             std::vector<std::int64_t>{});
  CHECK_THROWS_AS(density_estimates(p, 0.5), std::invalid_argument);
  DensityProfile p2 = DensityProfile::compute(a, std::vector<std::int64_t>{8},
                                              std::vector<std::int64_t>{64});
  DensityEstimates est = density_estimates(p2, 0.5);
  CHECK_FALSE(est.log_slope_based);  // single tail point: raw-ratio fallback
  NatSet bilat(10, Laterality::Bilateral);
  CHECK_THROWS_AS(default_profile(bilat), std::invalid_argument);
}
