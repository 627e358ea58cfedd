#pragma once

// Finite-horizon density profiles: exact prefix counts, sliding-window
// extrema per window length, and harmonic sums at selected points.  All six
// density estimates (lower/upper, Banach lower/upper, logarithmic
// lower/upper) are derived from one profile.

#include <cstdint>
#include <span>
#include <vector>

#include "rtset/natset.hpp"

namespace rtset {

struct WindowStat {
  std::int64_t length = 0;
  std::int64_t max_count = 0;   // max_k |A ∩ [k, k+length)| over k in [0, H-length]
  std::int64_t max_at = 0;      // first k attaining the max
  std::int64_t min_count = 0;
  std::int64_t min_at = 0;
};

struct HarmonicStat {
  std::int64_t point = 0;  // N
  double sum = 0.0;        // sum of 1/j over j in A, 1 <= j <= N
};

class DensityProfile {
 public:
  // Exact counts; window maxima/minima are one pass over the prefix array
  // per length.  Requires a unilateral set and a nonempty length list.
  static DensityProfile compute(const NatSet& a,
                                std::span<const std::int64_t> window_lengths,
                                std::span<const std::int64_t> log_points);

  std::int64_t horizon() const { return horizon_; }
  // c(n) = |A ∩ [0, n)| for n in [0, H]
  std::int64_t prefix_count(std::int64_t n) const { return prefix_[n]; }
  const std::vector<WindowStat>& windows() const { return windows_; }
  const std::vector<HarmonicStat>& harmonics() const { return harmonics_; }

 private:
  std::int64_t horizon_ = 0;
  std::vector<std::uint32_t> prefix_;
  std::vector<WindowStat> windows_;
  std::vector<HarmonicStat> harmonics_;
};

// Default sampling grids: powers of two up to H/4 (plus H/4 itself) for
// windows, powers of ten up to H for harmonic points.
std::vector<std::int64_t> default_window_lengths(std::int64_t horizon);
std::vector<std::int64_t> default_log_points(std::int64_t horizon);

struct Estimate {
  double value = 0.0;
  std::int64_t attained = 0;  // n (or N) at which the extremum was attained
};

struct DensityEstimates {
  Estimate lower_density;   // min of c(n)/n over the prefix tail
  Estimate upper_density;   // max of c(n)/n over the prefix tail
  Estimate banach_lower;    // min of W-(n)/n over the window-length tail
  Estimate banach_upper;    // max of W+(n)/n over the window-length tail
  Estimate log_lower;       // see note below
  Estimate log_upper;
  bool log_slope_based = false;  // false when a single tail point forced the
                                 // raw h(N)/ln N fallback
};

// Extrema over the final tail_fraction of each sample family.  Logarithmic
// densities are estimated from harmonic-sum slopes
//     (h(N) - h(N0)) / (ln N - ln N0),   N0 = first tail point,
// which removes the O(1/ln N) constant bias of the raw ratio h(N)/ln N; the
// raw sums stay available in the profile.  With a single tail point the raw
// ratio is used and log_slope_based is false.
DensityEstimates density_estimates(const DensityProfile& profile,
                                   double tail_fraction = 0.5);

}  // namespace rtset
