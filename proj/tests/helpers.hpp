#pragma once

// Shared generators for the test suites.  Everything is seeded and built
// through SetSpec so tests stay reproducible.

#include <cstdint>
#include <random>
#include <vector>

#include "rtset/natset.hpp"
#include "rtset/setspec.hpp"

namespace helpers {

inline rtset::NatSet periodic(std::int64_t horizon, std::int64_t d,
                              std::int64_t offset = 0) {
  rtset::SetSpec spec;
  spec.kind = rtset::SetSpec::Kind::Periodic;
  spec.horizon = horizon;
  spec.period = d;
  spec.offset = offset;
  return rtset::materialize(spec);
}

inline rtset::NatSet bernoulli(std::int64_t horizon, double p,
                               std::uint64_t seed) {
  rtset::SetSpec spec;
  spec.kind = rtset::SetSpec::Kind::Bernoulli;
  spec.horizon = horizon;
  spec.p = p;
  spec.seed = seed;
  return rtset::materialize(spec);
}

// Runs [2^k, 2^k + k) for k >= 1, as long as they fit below the horizon.
inline rtset::SetSpec pow2_runs_spec(std::int64_t horizon) {
  rtset::SetSpec spec;
  spec.kind = rtset::SetSpec::Kind::Runs;
  spec.horizon = horizon;
  for (std::int64_t k = 1; (std::int64_t{1} << k) + k <= horizon; ++k) {
    spec.run_positions.push_back(std::int64_t{1} << k);
    spec.run_lengths.push_back(k);
  }
  return spec;
}

inline rtset::NatSet pow2_runs(std::int64_t horizon) {
  return rtset::materialize(pow2_runs_spec(horizon));
}

// Even numbers inside [2^k, 2^k + 2k), i.e. k evenly spaced elements with
// gap 2 per block, for every k >= 1 fitting below the horizon.
inline rtset::NatSet even_runs(std::int64_t horizon) {
  rtset::NatSet s(horizon);
  for (std::int64_t k = 1; (std::int64_t{1} << k) + 2 * k <= horizon; ++k)
    for (std::int64_t i = 0; i < k; ++i)
      s.insert((std::int64_t{1} << k) + 2 * i);
  return s;
}

// {2^k : k >= k0} below the horizon.
inline rtset::NatSet powers_of_two(std::int64_t horizon, std::int64_t k0 = 1) {
  rtset::NatSet s(horizon);
  for (std::int64_t k = k0; (std::int64_t{1} << k) < horizon; ++k)
    s.insert(std::int64_t{1} << k);
  return s;
}

inline rtset::NatSet random_set(std::int64_t horizon, double p,
                                std::mt19937_64& rng) {
  rtset::NatSet s(horizon);
  for (std::int64_t v = 0; v < horizon; ++v) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) s.insert(v);
  }
  return s;
}

// Naive window count |A ∩ [k, k+n)| by direct membership tests.
inline std::int64_t naive_window_count(const rtset::NatSet& a, std::int64_t k,
                                       std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t v = k; v < k + n; ++v)
    if (a.contains(v)) ++c;
  return c;
}

// Naive max/min over all windows of length n, the O(H*n) recount oracle.
inline std::pair<std::int64_t, std::int64_t> naive_window_extrema(
    const rtset::NatSet& a, std::int64_t n) {
  std::int64_t best = -1, worst = n + 1;
  for (std::int64_t k = 0; k + n <= a.horizon(); ++k) {
    std::int64_t c = naive_window_count(a, k, n);
    best = std::max(best, c);
    worst = std::min(worst, c);
  }
  return {best, worst};
}

}  // namespace helpers
