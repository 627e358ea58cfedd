#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rtset/families.hpp"

using namespace rtset;

namespace {

// Brute-force oracle: longest AP with step in [1, bound] by trying every
// (start, step) pair and walking memberships.
std::int64_t brute_force_ap_length(const NatSet& a, std::int64_t bound) {
  std::int64_t best = a.empty() ? 0 : 1;
  for (std::int64_t start : a) {
    for (std::int64_t s = 1; s <= bound; ++s) {
      std::int64_t len = 0;
      for (std::int64_t v = start; v < a.value_hi() && a.contains(v); v += s)
        ++len;
      best = std::max(best, len);
    }
  }
  return best;
}

// Longest run of consecutive elements with gaps <= bound, by direct scan.
std::int64_t longest_bounded_gap_run(const NatSet& a, std::int64_t bound) {
  std::int64_t best = 0, run = 0, prev = 0;
  for (std::int64_t v : a) {
    run = (run > 0 && v - prev <= bound) ? run + 1 : 1;
    prev = v;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

TEST_CASE("is_thick") {
  const std::int64_t h = 100000;
  CHECK_FALSE(is_thick(helpers::periodic(h, 2), 2));  // parity forbids pairs

  NatSet runs = helpers::pow2_runs(h);
  auto cert = is_thick(runs, 16);
  REQUIRE(cert);
  CHECK(cert->intervals.front().first == 65536);
  CHECK(recheck(runs, *cert));

  NatSet full = set_complement(NatSet(100));
  auto cert2 = is_thick(full, 57);
  REQUIRE(cert2);
  CHECK(cert2->intervals.front() == std::pair<std::int64_t, std::int64_t>{0, 57});
}

TEST_CASE("syndetic_gap_bound") {
  NatSet m3 = helpers::periodic(99, 3);
  SyndeticCertificate cert = syndetic_gap_bound(m3);
  CHECK(cert.bound == 3);
  CHECK(recheck(m3, cert));

  NatSet full = set_complement(NatSet(64));
  CHECK(syndetic_gap_bound(full).bound == 1);

  // The runs family is not syndetic up to H: its bound grows with H.
  std::int64_t b1 = syndetic_gap_bound(helpers::pow2_runs(1000)).bound;
  std::int64_t b2 = syndetic_gap_bound(helpers::pow2_runs(100000)).bound;
  CHECK(b2 > b1);
  CHECK(b1 > 100);  // far from any fixed gap bound already at H = 1000

  CHECK_THROWS_AS(
      syndetic_gap_bound(NatSet::from_elements(10, std::vector<std::int64_t>{4})),
      std::invalid_argument);
}

TEST_CASE("piecewise syndetic: runs of evens are PSyn but not Syn") {
  const std::int64_t h = 1000000;
  NatSet a = helpers::even_runs(h);
  for (std::int64_t len : {1, 4, 8, 16}) {
    auto cert = piecewise_syndetic_witness(a, 2, len);
    REQUIRE(cert);
    CHECK(recheck(a, *cert));
  }
  // Inter-run gaps are huge, so the syndetic bound explodes.
  CHECK(syndetic_gap_bound(a).bound > 1000);
}

TEST_CASE("every syndetic set is piecewise syndetic at its own bound") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 10; ++iter) {
    NatSet a = helpers::random_set(2000, 0.5, rng);
    if (a.size() < 10) continue;
    SyndeticCertificate syn = syndetic_gap_bound(a);
    for (std::int64_t len : {std::int64_t{1}, a.size() / 2, a.size()}) {
      if (len < 1) continue;
      auto cert = piecewise_syndetic_witness(a, syn.bound, len);
      REQUIRE(cert);
      CHECK(recheck(a, *cert));
    }
  }
}

TEST_CASE("piecewise syndetic on the lacunary set {2^k}") {
  const std::int64_t h = 1000000;
  NatSet a = helpers::powers_of_two(h, 1);  // {2, 4, 8, 16, ...}
  // Oracle: direct scan of run lengths with gaps <= 10.  The initial block
  // {2,4,8,16} has gaps 2,4,8, so runs of 4 exist; gap 16 breaks longer ones.
  std::int64_t longest = longest_bounded_gap_run(a, 10);
  CHECK(longest == 4);
  auto found = piecewise_syndetic_witness(a, 10, longest);
  REQUIRE(found);
  CHECK(recheck(a, *found));
  CHECK_FALSE(piecewise_syndetic_witness(a, 10, longest + 1));
}

TEST_CASE("longest bounded-step AP: pinned instance") {
  NatSet a = NatSet::from_elements(
      20, std::vector<std::int64_t>{1, 3, 5, 7, 10, 13, 16});
  // Oracle first: brute force over all (start, step <= 3).
  CHECK(brute_force_ap_length(a, 3) == 4);
  BoundedStepApCertificate cert = longest_bounded_step_ap(a, 3);
  CHECK(cert.length == 4);
  CHECK(recheck(a, cert));
}

TEST_CASE("longest bounded-step AP: degenerate cases") {
  NatSet full = set_complement(NatSet(500));
  BoundedStepApCertificate cert = longest_bounded_step_ap(full, 1);
  CHECK(cert.length == 500);
  CHECK(cert.step == 1);
  CHECK(recheck(full, cert));

  NatSet evens = helpers::periodic(100, 2);
  CHECK(longest_bounded_step_ap(evens, 1).length == 1);

  NatSet empty(10);
  CHECK(longest_bounded_step_ap(empty, 3).length == 0);
}

TEST_CASE("DP equals brute force on random sets") {
  std::mt19937_64 rng(404);
  for (int iter = 0; iter < 20; ++iter) {
    NatSet a = helpers::random_set(1500, 0.05 + 0.04 * iter, rng);
    for (std::int64_t b : {1, 3, 8}) {
      BoundedStepApCertificate cert = longest_bounded_step_ap(a, b);
      CHECK(cert.length == brute_force_ap_length(a, b));
      CHECK(recheck(a, cert));
    }
  }
}

TEST_CASE("syndetic core extraction on runs of evens") {
  const std::int64_t h = 100000;
  NatSet a = helpers::even_runs(h);
  SyndeticCoreResult res = syndetic_core_extraction(a, 2, 8);
  REQUIRE(res.core);
  CHECK(res.max_achievable_depth == 8);
  const SyndeticCore& core = *res.core;
  REQUIRE(core.steps.size() == 8);
  for (std::int64_t f : core.steps) CHECK(f == 2);
  // Anchors are run starts (powers of two).
  for (std::int64_t n : core.anchors)
    CHECK((n & (n - 1)) == 0);
  // Membership oracle: n_j + f_1 + ... + f_k in A for every k <= j.
  for (std::size_t j = 0; j < core.steps.size(); ++j) {
    std::int64_t sum = 0;
    for (std::size_t k = 0; k <= j; ++k) {
      sum += core.steps[k];
      CHECK(a.contains(core.anchors[j] + sum));
    }
  }
  // F = prefix sums is syndetic with the same bound.
  std::vector<std::int64_t> prefix_sums;
  std::int64_t acc = 0;
  for (std::int64_t f : core.steps) prefix_sums.push_back(acc += f);
  NatSet f_set = NatSet::from_elements(acc + 1, prefix_sums);
  for (std::int64_t g : gap_list(f_set)) CHECK(g <= 2);
}

TEST_CASE("syndetic core extraction: constant-gap and failure cases") {
  NatSet a = helpers::periodic(1000, 4);
  SyndeticCoreResult res = syndetic_core_extraction(a, 4, 20);
  REQUIRE(res.core);
  for (std::int64_t f : res.core->steps) CHECK(f == 4);

  NatSet lac = helpers::powers_of_two(1000000, 1);
  SyndeticCoreResult fail = syndetic_core_extraction(lac, 4, 3);
  CHECK_FALSE(fail.core);
  CHECK(fail.max_achievable_depth == 2);  // {2,4,8} gives two steps only
}

TEST_CASE("extraction soundness on random piecewise syndetic sets") {
  std::mt19937_64 rng(9000);
  for (int iter = 0; iter < 8; ++iter) {
    // Plant runs with gaps <= 3 at scattered positions, plus noise.
    NatSet a(20000);
    for (int r = 0; r < 30; ++r) {
      std::int64_t at = static_cast<std::int64_t>(rng() % 19000);
      std::int64_t steps = 4 + static_cast<std::int64_t>(rng() % 12);
      for (std::int64_t i = 0; i < steps; ++i) {
        a.insert(at);
        at += 1 + static_cast<std::int64_t>(rng() % 3);
      }
    }
    SyndeticCoreResult res = syndetic_core_extraction(a, 3, 5);
    REQUIRE(res.core);
    for (std::size_t j = 0; j < res.core->steps.size(); ++j) {
      CHECK(res.core->steps[j] >= 1);
      CHECK(res.core->steps[j] <= 3);
      std::int64_t sum = 0;
      for (std::size_t k = 0; k <= j; ++k) {
        sum += res.core->steps[k];
        CHECK(a.contains(res.core->anchors[j] + sum));
      }
    }
  }
}

TEST_CASE("classify aggregates and cross-checks per-predicate results") {
  const std::int64_t h = 10000;
  ClassifyParams params;
  params.extraction_bound = 2;
  params.extraction_depth = 4;

  NatSet m3 = helpers::periodic(h, 3);
  ClassifyReport rep = classify(m3, params);
  REQUIRE(rep.syndetic);
  CHECK(rep.syndetic->bound == 3);
  CHECK(rep.syndetic->bound == syndetic_gap_bound(m3).bound);
  CHECK(std::abs(rep.estimates.upper_density.value - 1.0 / 3) < 1e-2);
  CHECK_FALSE(rep.thick);  // no interval of length 2 in 3N
  REQUIRE(rep.piecewise_syndetic);
  CHECK(recheck(m3, *rep.piecewise_syndetic));
  REQUIRE(rep.density_witness);
  CHECK(recheck(m3, *rep.density_witness));
  // 3N carries the infinite progression surrogate: an AP spanning the window.
  REQUIRE(rep.iap);
  CHECK(recheck(m3, *rep.iap));

  NatSet eruns = helpers::even_runs(h);
  ClassifyReport rep2 = classify(eruns, params);
  REQUIRE(rep2.piecewise_syndetic);
  CHECK(rep2.piecewise_syndetic->bound == params.ps_bound);
  REQUIRE(rep2.core);
  CHECK(rep2.core->steps == std::vector<std::int64_t>{2, 2, 2, 2});
  CHECK(rep2.longest_ap.length ==
        longest_bounded_step_ap(eruns, params.ap_step_bound).length);
  CHECK_FALSE(rep2.iap);

  NatSet runs = helpers::pow2_runs(h);
  ClassifyReport rep3 = classify(runs, params);
  REQUIRE(rep3.thick);
  CHECK(rep3.thick_length == 8);  // longest grid length with a full interval
  CHECK(recheck(runs, *rep3.thick));
}
