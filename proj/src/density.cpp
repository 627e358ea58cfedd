#include "rtset/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rtset/compensated.hpp"

namespace rtset {

DensityProfile DensityProfile::compute(
    const NatSet& a, std::span<const std::int64_t> window_lengths,
    std::span<const std::int64_t> log_points) {
  if (a.bilateral())
    throw std::invalid_argument("DensityProfile: unilateral sets only");
  if (window_lengths.empty())
    throw std::invalid_argument("DensityProfile: empty window_lengths");
  std::int64_t h = a.horizon();
  if (h > (std::int64_t{1} << 31))
    throw std::invalid_argument("DensityProfile: horizon too large");

  DensityProfile p;
  p.horizon_ = h;
  p.prefix_.assign(static_cast<std::size_t>(h) + 1, 0);
  std::uint32_t running = 0;
  for (std::int64_t n = 0; n < h; ++n) {
    running += a.contains(n) ? 1u : 0u;
    p.prefix_[static_cast<std::size_t>(n) + 1] = running;
  }

  std::vector<std::int64_t> lengths(window_lengths.begin(), window_lengths.end());
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (std::int64_t n : lengths) {
    if (n < 1 || n > h)
      throw std::invalid_argument("DensityProfile: window length outside [1, H]");
    WindowStat ws;
    ws.length = n;
    ws.max_count = -1;
    ws.min_count = n + 1;
    for (std::int64_t k = 0; k + n <= h; ++k) {
      std::int64_t c = static_cast<std::int64_t>(p.prefix_[k + n]) -
                       static_cast<std::int64_t>(p.prefix_[k]);
      if (c > ws.max_count) {
        ws.max_count = c;
        ws.max_at = k;
      }
      if (c < ws.min_count) {
        ws.min_count = c;
        ws.min_at = k;
      }
    }
    p.windows_.push_back(ws);
  }

  std::vector<std::int64_t> points(log_points.begin(), log_points.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::int64_t n : points)
    if (n < 1 || n > h)
      throw std::invalid_argument("DensityProfile: log point outside [1, H]");
  if (!points.empty()) {
    CompensatedSum acc;
    std::size_t next = 0;
    for (std::int64_t v : a) {
      while (next < points.size() && points[next] < v) {
        p.harmonics_.push_back({points[next], acc.value()});
        ++next;
      }
      if (next == points.size()) break;
      if (v >= 1) acc.add(1.0 / static_cast<double>(v));
    }
    while (next < points.size()) {
      p.harmonics_.push_back({points[next], acc.value()});
      ++next;
    }
  }
  return p;
}

std::vector<std::int64_t> default_window_lengths(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  std::int64_t cap = std::max<std::int64_t>(1, horizon / 4);
  for (std::int64_t n = 1; n <= cap; n *= 2) out.push_back(n);
  if (out.empty() || out.back() != cap) out.push_back(cap);
  return out;
}

std::vector<std::int64_t> default_log_points(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= horizon; n *= 10) out.push_back(n);
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

namespace {

// Last ceil(fraction * size) indices of [0, size).
std::size_t tail_begin(std::size_t size, double fraction) {
  std::size_t keep = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(size)));
  keep = std::clamp<std::size_t>(keep, 1, size);
  return size - keep;
}

}  // namespace

DensityEstimates density_estimates(const DensityProfile& profile,
                                   double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw std::invalid_argument("density_estimates: tail_fraction in (0,1)");
  std::int64_t h = profile.horizon();
  DensityEstimates est;

  // Prefix ratios over the last tail_fraction of [1, H].
  std::int64_t n0 = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil((1.0 - tail_fraction) * h)));
  est.lower_density = {2.0, 0};
  est.upper_density = {-1.0, 0};
  for (std::int64_t n = n0; n <= h; ++n) {
    double r = static_cast<double>(profile.prefix_count(n)) / n;
    if (r < est.lower_density.value) est.lower_density = {r, n};
    if (r > est.upper_density.value) est.upper_density = {r, n};
  }

  // Window ratios over the tail of the computed lengths.
  const auto& ws = profile.windows();
  if (ws.empty())
    throw std::invalid_argument("density_estimates: profile has no windows");
  est.banach_upper = {-1.0, 0};
  est.banach_lower = {2.0, 0};
  for (std::size_t i = tail_begin(ws.size(), tail_fraction); i < ws.size(); ++i) {
    double up = static_cast<double>(ws[i].max_count) / ws[i].length;
    double lo = static_cast<double>(ws[i].min_count) / ws[i].length;
    if (up > est.banach_upper.value) est.banach_upper = {up, ws[i].length};
    if (lo < est.banach_lower.value) est.banach_lower = {lo, ws[i].length};
  }

  // Logarithmic estimates from harmonic-sum slopes across the tail points.
  const auto& hs = profile.harmonics();
  if (hs.empty())
    throw std::invalid_argument("density_estimates: no log points in profile");
  std::size_t t0 = tail_begin(hs.size(), tail_fraction);
  if (hs.size() - t0 >= 2) {
    est.log_slope_based = true;
    est.log_lower = {2.0, 0};
    est.log_upper = {-1.0, 0};
    double base_log = std::log(static_cast<double>(hs[t0].point));
    for (std::size_t i = t0 + 1; i < hs.size(); ++i) {
      double dl = std::log(static_cast<double>(hs[i].point)) - base_log;
      if (dl <= 0.0) continue;
      double slope = (hs[i].sum - hs[t0].sum) / dl;
      if (slope < est.log_lower.value) est.log_lower = {slope, hs[i].point};
      if (slope > est.log_upper.value) est.log_upper = {slope, hs[i].point};
    }
    if (est.log_upper.attained == 0)
      throw std::invalid_argument("density_estimates: degenerate log tail");
  } else {
    // Single point: raw ratio h(N)/ln N (biased by O(1/ln N), reported as such).
    const HarmonicStat& last = hs.back();
    if (last.point < 2)
      throw std::invalid_argument("density_estimates: log point too small");
    double r = last.sum / std::log(static_cast<double>(last.point));
    est.log_slope_based = false;
    est.log_lower = {r, last.point};
    est.log_upper = {r, last.point};
  }
  return est;
}

}  // namespace rtset
