#pragma once

// Membership tests with certificates for the combinatorial families: thick
// sets, syndetic sets, piecewise syndetic sets, bounded-step arithmetic
// progressions, plus the pigeonhole extraction of a syndetic step core from
// a piecewise syndetic set.
//
// Every certificate can be re-checked against the set it was issued for in
// time linear in the certificate; `recheck` never fails on emitted
// certificates (this is asserted throughout the test suite).

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rtset/density.hpp"
#include "rtset/natset.hpp"

namespace rtset {

// Interval(s) [start, start + length) fully inside A.
struct ThickCertificate {
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;  // (start, length)
};

// Max gap between consecutive elements over [range_begin, range_end),
// counting the tail gap range_end - max(A).
struct SyndeticCertificate {
  std::int64_t bound = 0;
  std::int64_t range_begin = 0;
  std::int64_t range_end = 0;
};

// Runs of consecutive elements with successive gaps <= bound; length counts
// elements, not span.
struct PiecewiseSyndeticCertificate {
  std::int64_t bound = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;  // (start, length)
};

// start, start+step, ..., start+(length-1)*step all in A.
struct BoundedStepApCertificate {
  std::int64_t start = 0;
  std::int64_t step = 1;
  std::int64_t length = 0;
};

// A concrete window witnessing count/length = delta.
struct DensityWitnessCertificate {
  double delta = 0.0;
  std::int64_t window_start = 0;
  std::int64_t window_length = 1;
  std::int64_t count = 0;
};

// Translates n_m with (first m elements of F) + n_m ⊆ S, for m = 1..depth.
struct BlockWitness {
  NatSet f;
  std::vector<std::int64_t> translates;  // translates[m-1] = n_m
  std::int64_t depth() const { return static_cast<std::int64_t>(translates.size()); }
};

using FamilyCertificate =
    std::variant<ThickCertificate, SyndeticCertificate,
                 PiecewiseSyndeticCertificate, BoundedStepApCertificate,
                 DensityWitnessCertificate, BlockWitness>;

bool recheck(const NatSet& a, const ThickCertificate& cert);
bool recheck(const NatSet& a, const SyndeticCertificate& cert);
bool recheck(const NatSet& a, const PiecewiseSyndeticCertificate& cert);
bool recheck(const NatSet& a, const BoundedStepApCertificate& cert);
bool recheck(const NatSet& a, const DensityWitnessCertificate& cert);
bool recheck(const NatSet& s, const BlockWitness& cert);  // s is the certified set
bool recheck(const NatSet& a, const FamilyCertificate& cert);

// First interval [a, a+L) contained in A, if any.
std::optional<ThickCertificate> is_thick(const NatSet& a, std::int64_t length);

// Gap bound over [min A, H); throws if |A| < 2.
SyndeticCertificate syndetic_gap_bound(const NatSet& a);

// First run of >= run_length consecutive elements with gaps <= bound.  Also
// cross-checks the equivalent form: U_{j<=bound}(A + j) contains an interval
// of length >= run_length.
std::optional<PiecewiseSyndeticCertificate> piecewise_syndetic_witness(
    const NatSet& a, std::int64_t bound, std::int64_t run_length);

// Longest AP in A with step in [1, step_bound], by dynamic programming over
// (element, step); ties prefer smaller step, then smaller start.
BoundedStepApCertificate longest_bounded_step_ap(const NatSet& a,
                                                 std::int64_t step_bound);

// Steps f_1..f_m in [1, bound] and anchors n_1..n_m with
// n_j + f_1 + ... + f_k in A for every k <= j <= m.  Stage j keeps, among
// the surviving maximal runs with at least j steps, those whose j-th gap
// equals the most frequent value (ties to the smallest).
struct SyndeticCore {
  std::vector<std::int64_t> steps;
  std::vector<std::int64_t> anchors;
};
struct SyndeticCoreResult {
  std::optional<SyndeticCore> core;
  std::int64_t max_achievable_depth = 0;
};
SyndeticCoreResult syndetic_core_extraction(const NatSet& a, std::int64_t bound,
                                            std::int64_t depth);

struct ClassifyParams {
  std::vector<std::int64_t> thick_lengths{2, 4, 8, 16, 32};
  std::int64_t ps_bound = 4;
  std::int64_t ps_run_length = 8;
  std::int64_t ap_step_bound = 4;
  std::int64_t extraction_bound = 0;  // 0 disables extraction
  std::int64_t extraction_depth = 0;
  double iap_span_fraction = 0.5;  // finite surrogate for an infinite AP
  std::int64_t iap_step_bound = 8;
  std::vector<std::int64_t> window_lengths;  // empty: defaults
  std::vector<std::int64_t> log_points;      // empty: defaults
  double tail_fraction = 0.5;
};

struct ClassifyReport {
  std::int64_t horizon = 0;
  std::int64_t size = 0;
  DensityEstimates estimates;
  std::optional<ThickCertificate> thick;
  std::int64_t thick_length = 0;  // largest grid length certified
  std::optional<SyndeticCertificate> syndetic;
  std::optional<PiecewiseSyndeticCertificate> piecewise_syndetic;
  BoundedStepApCertificate longest_ap;
  std::optional<DensityWitnessCertificate> density_witness;
  std::optional<BoundedStepApCertificate> iap;  // AP spanning >= fraction * H
  std::optional<SyndeticCore> core;
  std::int64_t core_max_depth = 0;
};

// Runs every predicate on its parameter grid and aggregates the evidence.
ClassifyReport classify(const NatSet& a, const ClassifyParams& params);

}  // namespace rtset
