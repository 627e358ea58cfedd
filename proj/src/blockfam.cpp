#include "rtset/blockfam.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtset {

namespace {

void require_unilateral(const NatSet& s, const char* who) {
  if (s.bilateral())
    throw std::invalid_argument(std::string(who) + ": unilateral sets only");
}

}  // namespace

BlockCheckResult block_certificate_check(const NatSet& s, const NatSet& f,
                                         std::int64_t depth) {
  require_unilateral(s, "block_certificate_check");
  require_unilateral(f, "block_certificate_check");
  if (depth < 1) throw std::invalid_argument("block_certificate_check: depth >= 1");
  if (depth > f.size())
    throw std::invalid_argument("block_certificate_check: depth exceeds |F|");

  auto f_elems = f.elements();
  std::vector<std::int64_t> s_elems = s.elements();
  BlockCheckResult result;
  std::vector<std::int64_t> translates;
  std::int64_t f0 = f_elems[0];
  for (std::int64_t m = 1; m <= depth; ++m) {
    std::int64_t found = -1;
    std::int64_t top = f_elems[static_cast<std::size_t>(m - 1)];
    for (std::int64_t anchor : s_elems) {
      std::int64_t n = anchor - f0;
      if (n < 0) continue;
      if (top + n >= s.value_hi()) break;  // later anchors only larger
      result.searched_limit = std::max(result.searched_limit, n);
      bool ok = true;
      for (std::int64_t i = 0; i < m; ++i)
        if (!s.contains(f_elems[static_cast<std::size_t>(i)] + n)) {
          ok = false;
          break;
        }
      if (ok) {
        found = n;
        break;
      }
    }
    if (found < 0) {
      result.failed_prefix = m;
      result.partial = std::move(translates);
      return result;
    }
    translates.push_back(found);
  }
  result.witness = BlockWitness{f, std::move(translates)};
  return result;
}

ComposeResult compose_block_witness(const NatSet& s, const BlockWitness& outer,
                                    const BlockWitness& inner,
                                    std::int64_t depth) {
  if (depth < 1 || depth > inner.depth())
    throw std::invalid_argument(
        "compose_block_witness: depth must be in [1, inner depth]");
  // The outer witness certifies S over F_b = inner's target universe; the
  // caller is trusted on that pairing, but both witnesses must re-check.
  if (!recheck(outer.f, inner))
    throw std::invalid_argument("compose_block_witness: inner witness invalid");
  if (!recheck(s, outer))
    throw std::invalid_argument("compose_block_witness: outer witness invalid");

  auto f_elems = inner.f.elements();
  auto fb_elems = outer.f.elements();
  ComposeResult result;
  std::vector<std::int64_t> translates;
  for (std::int64_t m = 1; m <= depth; ++m) {
    std::int64_t n_inner = inner.translates[static_cast<std::size_t>(m - 1)];
    std::int64_t top = f_elems[static_cast<std::size_t>(m - 1)] + n_inner;
    // Rank of the largest translated element inside F_b.
    auto it = std::upper_bound(fb_elems.begin(), fb_elems.end(), top);
    std::int64_t rank = static_cast<std::int64_t>(it - fb_elems.begin());
    if (rank > outer.depth()) {
      result.failed_prefix = m;
      result.error =
          "inner translate for prefix " + std::to_string(m) +
          " needs outer prefix " + std::to_string(rank) + " > verified depth " +
          std::to_string(outer.depth());
      return result;
    }
    translates.push_back(n_inner +
                         outer.translates[static_cast<std::size_t>(rank - 1)]);
  }
  BlockWitness composed{inner.f, std::move(translates)};
  if (!recheck(s, composed))
    throw std::logic_error("compose_block_witness: composed witness failed recheck");
  result.witness = std::move(composed);
  return result;
}

WindowBoundVerdict block_density_window_bound(const NatSet& s,
                                              const BlockWitness& w,
                                              double delta) {
  if (!recheck(s, w))
    throw std::invalid_argument("block_density_window_bound: witness invalid");
  auto f_elems = w.f.elements();
  WindowBoundVerdict verdict;
  // The qualifying statistic is the density of the deepest verified prefix:
  // a sound finite stand-in for "density above delta at arbitrarily deep
  // prefixes" (short prefixes of any set look dense).
  std::int64_t best_m = w.depth();
  double best_density =
      best_m < 1 ? -1.0
                 : static_cast<double>(best_m) /
                       static_cast<double>(
                           f_elems[static_cast<std::size_t>(best_m - 1)] + 1);
  if (best_m < 1 || best_density <= delta) {
    verdict.message = "deepest prefix of F does not reach density above delta";
    return verdict;
  }
  std::int64_t e = f_elems[static_cast<std::size_t>(best_m - 1)];
  std::int64_t n = w.translates[static_cast<std::size_t>(best_m - 1)];
  std::int64_t count = 0;
  for (std::int64_t v = n; v <= n + e; ++v)
    if (s.contains(v)) ++count;
  verdict.prefix_length = best_m;
  verdict.translate = n;
  verdict.window_start = n;
  verdict.window_span = e + 1;
  verdict.count = count;
  verdict.ratio = static_cast<double>(count) / static_cast<double>(e + 1);
  verdict.passed = verdict.ratio > delta;
  if (!verdict.passed) verdict.message = "window recount fell below delta";
  return verdict;
}

PiecewiseSyndeticCertificate block_syndetic_to_ps(const NatSet& s,
                                                  const BlockWitness& w,
                                                  std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("block_syndetic_to_ps: bound >= 1");
  if (!recheck(s, w))
    throw std::invalid_argument("block_syndetic_to_ps: witness invalid");
  auto f_elems = w.f.elements();
  for (std::int64_t m = 1; m < w.depth(); ++m) {
    std::int64_t gap = f_elems[static_cast<std::size_t>(m)] -
                       f_elems[static_cast<std::size_t>(m - 1)];
    if (gap > bound)
      throw std::invalid_argument(
          "block_syndetic_to_ps: F exceeds gap bound over the witnessed prefix");
  }
  PiecewiseSyndeticCertificate cert;
  cert.bound = bound;
  for (std::int64_t m = 1; m <= w.depth(); ++m)
    cert.runs.push_back(
        {f_elems[0] + w.translates[static_cast<std::size_t>(m - 1)], m});
  if (!recheck(s, cert))
    throw std::logic_error("block_syndetic_to_ps: emitted runs failed recheck");
  // Cross-check the thickness form from the translated union.
  NatSet u(s.horizon(), s.laterality());
  for (std::int64_t i = 0; i <= bound; ++i)
    u = set_union(u, translate(s, i).set);
  if (!is_thick(u, w.depth()))
    throw std::logic_error("block_syndetic_to_ps: translate-union not thick");
  return cert;
}

DenseBlockSearchResult greedy_dense_block_basis(const NatSet& s,
                                                std::int64_t window_length,
                                                std::int64_t depth) {
  require_unilateral(s, "greedy_dense_block_basis");
  if (window_length < 1 || depth < 1)
    throw std::invalid_argument("greedy_dense_block_basis: positive parameters");
  // Densest window of the requested length.
  std::int64_t best_k = 0, best_count = -1, count = 0;
  for (std::int64_t v = 0; v < window_length && v < s.value_hi(); ++v)
    if (s.contains(v)) ++count;
  best_count = count;
  for (std::int64_t k = 1; k + window_length <= s.value_hi(); ++k) {
    count += (s.contains(k + window_length - 1) ? 1 : 0) -
             (s.contains(k - 1) ? 1 : 0);
    if (count > best_count) {
      best_count = count;
      best_k = k;
    }
  }
  DenseBlockSearchResult result;
  if (best_count <= 0) return result;
  result.seed_window_density =
      static_cast<double>(best_count) / static_cast<double>(window_length);

  std::vector<std::int64_t> f_elems;
  for (std::int64_t v = best_k; v < best_k + window_length; ++v)
    if (s.contains(v)) f_elems.push_back(v - best_k);
  // Drop elements whose prefix cannot be translated into S.
  while (!f_elems.empty()) {
    NatSet f = NatSet::from_elements(s.horizon(), f_elems);
    std::int64_t d = std::min<std::int64_t>(depth, f.size());
    BlockCheckResult check = block_certificate_check(s, f, d);
    if (check.witness) {
      result.witness = std::move(check.witness);
      return result;
    }
    f_elems.erase(f_elems.begin() + (check.failed_prefix - 1));
    ++result.pruned;
  }
  return result;
}

}  // namespace rtset
