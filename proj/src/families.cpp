#include "rtset/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rtset {

bool recheck(const NatSet& a, const ThickCertificate& cert) {
  if (cert.intervals.empty()) return false;
  for (auto [start, len] : cert.intervals) {
    if (len < 1) return false;
    for (std::int64_t v = start; v < start + len; ++v)
      if (!a.contains(v)) return false;
  }
  return true;
}

bool recheck(const NatSet& a, const SyndeticCertificate& cert) {
  if (a.size() < 2) return false;
  if (cert.range_begin != a.min_element() || cert.range_end != a.horizon())
    return false;
  std::int64_t worst = cert.range_end - a.max_element();
  std::int64_t prev = a.min_element();
  for (std::int64_t v : a) {
    worst = std::max(worst, v - prev);
    prev = v;
  }
  return worst == cert.bound;
}

bool recheck(const NatSet& a, const PiecewiseSyndeticCertificate& cert) {
  if (cert.bound < 1 || cert.runs.empty()) return false;
  for (auto [start, len] : cert.runs) {
    if (len < 1 || !a.contains(start)) return false;
    std::int64_t have = 1;
    std::int64_t at = start;
    while (have < len) {
      std::int64_t next = -1;
      for (std::int64_t d = 1; d <= cert.bound; ++d)
        if (a.contains(at + d)) {
          next = at + d;
          break;
        }
      if (next < 0) return false;
      at = next;
      ++have;
    }
  }
  return true;
}

bool recheck(const NatSet& a, const BoundedStepApCertificate& cert) {
  if (cert.length == 0) return true;  // degenerate: empty progression
  if (cert.step < 1) return false;
  for (std::int64_t i = 0; i < cert.length; ++i)
    if (!a.contains(cert.start + i * cert.step)) return false;
  return true;
}

bool recheck(const NatSet& a, const DensityWitnessCertificate& cert) {
  if (cert.window_length < 1) return false;
  std::int64_t c = 0;
  for (std::int64_t v = cert.window_start;
       v < cert.window_start + cert.window_length; ++v)
    if (a.contains(v)) ++c;
  return c == cert.count &&
         cert.delta == static_cast<double>(c) /
                           static_cast<double>(cert.window_length);
}

bool recheck(const NatSet& s, const BlockWitness& cert) {
  auto f_elems = cert.f.elements();
  if (cert.depth() > static_cast<std::int64_t>(f_elems.size())) return false;
  for (std::int64_t m = 1; m <= cert.depth(); ++m) {
    std::int64_t n = cert.translates[static_cast<std::size_t>(m - 1)];
    if (n < 0) return false;
    for (std::int64_t i = 0; i < m; ++i)
      if (!s.contains(f_elems[static_cast<std::size_t>(i)] + n)) return false;
  }
  return true;
}

bool recheck(const NatSet& a, const FamilyCertificate& cert) {
  return std::visit([&](const auto& c) { return recheck(a, c); }, cert);
}

std::optional<ThickCertificate> is_thick(const NatSet& a, std::int64_t length) {
  if (length < 1) throw std::invalid_argument("is_thick: length must be >= 1");
  std::int64_t run = 0;
  std::int64_t prev = -2;
  for (std::int64_t v : a) {
    run = (v == prev + 1) ? run + 1 : 1;
    prev = v;
    if (run >= length)
      return ThickCertificate{{{v - length + 1, length}}};
  }
  return std::nullopt;
}

SyndeticCertificate syndetic_gap_bound(const NatSet& a) {
  if (a.size() < 2)
    throw std::invalid_argument("syndetic_gap_bound: need at least 2 elements");
  SyndeticCertificate cert;
  cert.range_begin = a.min_element();
  cert.range_end = a.horizon();
  std::int64_t worst = cert.range_end - a.max_element();
  std::int64_t prev = cert.range_begin;
  for (std::int64_t v : a) {
    worst = std::max(worst, v - prev);
    prev = v;
  }
  cert.bound = worst;
  return cert;
}

std::optional<PiecewiseSyndeticCertificate> piecewise_syndetic_witness(
    const NatSet& a, std::int64_t bound, std::int64_t run_length) {
  if (bound < 1 || run_length < 1)
    throw std::invalid_argument("piecewise_syndetic_witness: bound and length >= 1");
  std::int64_t run_start = -1, run_count = 0, prev = 0;
  for (std::int64_t v : a) {
    if (run_count > 0 && v - prev <= bound) {
      ++run_count;
    } else {
      run_start = v;
      run_count = 1;
    }
    prev = v;
    if (run_count >= run_length) {
      PiecewiseSyndeticCertificate cert{bound, {{run_start, run_count}}};
      // Cross-check the translate-union form: U_{j<=b}(A+j) must contain an
      // interval of length >= run_length.
      NatSet u(a.horizon(), a.laterality());
      for (std::int64_t j = 0; j <= bound; ++j)
        u = set_union(u, translate(a, j).set);
      if (!is_thick(u, run_length))
        throw std::logic_error(
            "piecewise_syndetic_witness: translate-union cross-check failed");
      return cert;
    }
  }
  return std::nullopt;
}

BoundedStepApCertificate longest_bounded_step_ap(const NatSet& a,
                                                 std::int64_t step_bound) {
  if (step_bound < 1)
    throw std::invalid_argument("longest_bounded_step_ap: step bound >= 1");
  if (a.empty()) return BoundedStepApCertificate{0, 1, 0};
  auto elems = a.elements();
  BoundedStepApCertificate best{elems[0], 1, 1};
  // len(v, s) = 1 + len(v - s, s); one dense table per step, reused.
  std::int64_t base = a.value_lo();
  std::vector<std::int32_t> len(
      static_cast<std::size_t>(a.value_hi() - base), 0);
  for (std::int64_t s = 1; s <= step_bound; ++s) {
    std::fill(len.begin(), len.end(), 0);
    for (std::int64_t v : elems) {
      std::int32_t l = 1;
      if (v - s >= base && a.contains(v - s))
        l = len[static_cast<std::size_t>(v - s - base)] + 1;
      len[static_cast<std::size_t>(v - base)] = l;
      if (l > best.length) best = {v - static_cast<std::int64_t>(l - 1) * s, s, l};
    }
  }
  return best;
}

namespace {

struct Chain {
  std::int64_t anchor = 0;
  std::vector<std::int64_t> steps;
};

// Maximal runs of consecutive elements with gaps <= bound, as step chains.
std::vector<Chain> maximal_chains(const NatSet& a, std::int64_t bound) {
  std::vector<Chain> chains;
  Chain cur;
  bool open = false;
  std::int64_t prev = 0;
  for (std::int64_t v : a) {
    if (open && v - prev <= bound) {
      cur.steps.push_back(v - prev);
    } else {
      if (open) chains.push_back(std::move(cur));
      cur = Chain{v, {}};
      open = true;
    }
    prev = v;
  }
  if (open) chains.push_back(std::move(cur));
  return chains;
}

}  // namespace

SyndeticCoreResult syndetic_core_extraction(const NatSet& a, std::int64_t bound,
                                            std::int64_t depth) {
  if (bound < 1 || depth < 1)
    throw std::invalid_argument("syndetic_core_extraction: bound and depth >= 1");
  std::vector<Chain> survivors = maximal_chains(a, bound);
  SyndeticCore core;
  for (std::int64_t j = 1; j <= depth; ++j) {
    // Pigeonhole over the j-th step of chains long enough to have one.
    std::map<std::int64_t, std::int64_t> votes;
    for (const Chain& c : survivors)
      if (static_cast<std::int64_t>(c.steps.size()) >= j)
        ++votes[c.steps[static_cast<std::size_t>(j - 1)]];
    if (votes.empty())
      return SyndeticCoreResult{std::nullopt, j - 1};
    std::int64_t f = 0, best_count = -1;
    for (auto [step, count] : votes)
      if (count > best_count) {  // map order makes ties go to the smallest step
        best_count = count;
        f = step;
      }
    std::vector<Chain> next;
    for (Chain& c : survivors)
      if (static_cast<std::int64_t>(c.steps.size()) < j ||
          c.steps[static_cast<std::size_t>(j - 1)] == f)
        next.push_back(std::move(c));
    survivors = std::move(next);
    core.steps.push_back(f);
    std::int64_t anchor = -1;
    for (const Chain& c : survivors)
      if (static_cast<std::int64_t>(c.steps.size()) >= j &&
          (anchor < 0 || c.anchor < anchor))
        anchor = c.anchor;
    core.anchors.push_back(anchor);
  }
  return SyndeticCoreResult{core, depth};
}

ClassifyReport classify(const NatSet& a, const ClassifyParams& params) {
  ClassifyReport report;
  report.horizon = a.horizon();
  report.size = a.size();

  auto lengths = params.window_lengths.empty()
                     ? default_window_lengths(a.horizon())
                     : params.window_lengths;
  auto points = params.log_points.empty() ? default_log_points(a.horizon())
                                          : params.log_points;
  DensityProfile profile = DensityProfile::compute(a, lengths, points);
  report.estimates = density_estimates(profile, params.tail_fraction);

  for (const WindowStat& ws : profile.windows()) {
    if (ws.length == report.estimates.banach_upper.attained) {
      report.density_witness = DensityWitnessCertificate{
          static_cast<double>(ws.max_count) / ws.length, ws.max_at, ws.length,
          ws.max_count};
      break;
    }
  }

  for (std::int64_t length : params.thick_lengths) {
    auto cert = is_thick(a, length);
    if (cert) {
      report.thick = cert;
      report.thick_length = length;
    }
  }

  if (a.size() >= 2) report.syndetic = syndetic_gap_bound(a);
  report.piecewise_syndetic =
      piecewise_syndetic_witness(a, params.ps_bound, params.ps_run_length);
  report.longest_ap = longest_bounded_step_ap(a, params.ap_step_bound);

  BoundedStepApCertificate wide = longest_bounded_step_ap(a, params.iap_step_bound);
  double span = wide.length >= 2
                    ? static_cast<double>((wide.length - 1) * wide.step)
                    : 0.0;
  if (span >= params.iap_span_fraction * static_cast<double>(a.horizon()))
    report.iap = wide;

  if (params.extraction_bound >= 1 && params.extraction_depth >= 1) {
    auto ext = syndetic_core_extraction(a, params.extraction_bound,
                                        params.extraction_depth);
    report.core = ext.core;
    report.core_max_depth = ext.max_achievable_depth;
  }
  return report;
}

}  // namespace rtset
