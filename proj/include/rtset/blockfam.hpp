#pragma once

// Block-family certificate checking.  S carries a block witness over F when
// every prefix of F translates into S; since any finite subset of F sits
// inside some prefix and containment is inherited by subsets, the prefix
// reduction certifies all finite subsets up to the verified depth.

#include <cstdint>
#include <optional>
#include <string>

#include "rtset/families.hpp"
#include "rtset/natset.hpp"

namespace rtset {

struct BlockCheckResult {
  std::optional<BlockWitness> witness;
  std::int64_t failed_prefix = 0;   // m whose translate search failed; 0 = none
  std::int64_t searched_limit = 0;  // largest candidate translate examined
  std::vector<std::int64_t> partial;  // translates found before the failure
};

// For each prefix length m = 1..depth, the smallest n with P_m + n ⊆ S,
// searched over candidate anchors n in S - min(F).  Cost O(|S| * m) per
// prefix.
BlockCheckResult block_certificate_check(const NatSet& s, const NatSet& f,
                                         std::int64_t depth);

struct ComposeResult {
  std::optional<BlockWitness> witness;
  std::int64_t failed_prefix = 0;
  std::string error;
};

// From outer: (S over F_b) and inner: (F_b over F), build a witness for
// (S over F): each translated prefix of F lands inside some verified prefix
// of F_b, whose own translate finishes the journey into S.  Fails when an
// inner translate exits the region outer was verified on.
ComposeResult compose_block_witness(const NatSet& s, const BlockWitness& outer,
                                    const BlockWitness& inner,
                                    std::int64_t depth);

struct WindowBoundVerdict {
  bool passed = false;
  std::int64_t prefix_length = 0;  // m with prefix density above delta
  std::int64_t translate = 0;
  std::int64_t window_start = 0;
  std::int64_t window_span = 0;    // e_m + 1 slots
  std::int64_t count = 0;          // recounted |S ∩ window|
  double ratio = 0.0;
  std::string message;
};

// If some prefix of F has density above delta, the translated copy forces a
// window of S with density above delta; the window count is recounted in S.
WindowBoundVerdict block_density_window_bound(const NatSet& s,
                                              const BlockWitness& w,
                                              double delta);

// With F syndetic (gaps <= bound over the witnessed prefixes), the
// translated prefixes are runs in S with gaps <= bound of every length up
// to depth; also cross-checks that U_{i<=bound}(S+i) contains an interval
// of length >= depth.  Throws if F's witnessed prefix violates the bound.
PiecewiseSyndeticCertificate block_syndetic_to_ps(const NatSet& s,
                                                  const BlockWitness& w,
                                                  std::int64_t bound);

struct DenseBlockSearchResult {
  std::optional<BlockWitness> witness;
  double seed_window_density = 0.0;
  std::int64_t pruned = 0;  // elements dropped from the seed window
  bool authoritative = false;  // always false: greedy heuristic, not a decision
};

// Best-effort search for a dense F with blocks translating into S: seed F
// with the densest window of the given length, then drop elements whose
// prefix lacks a translate.  Heuristic only; a miss proves nothing.
DenseBlockSearchResult greedy_dense_block_basis(const NatSet& s,
                                                std::int64_t window_length,
                                                std::int64_t depth);

}  // namespace rtset
