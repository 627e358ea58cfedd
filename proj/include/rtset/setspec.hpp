#pragma once

// Deterministic set generators.  A SetSpec fully describes a NatSet, so the
// same spec (seed included) always materializes to the same bits; that is
// what makes stored run configs reproducible.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtset/natset.hpp"

namespace rtset {

struct SetSpec {
  enum class Kind {
    ExplicitList,  // the listed elements
    Periodic,      // { v : v ≡ offset (mod period) }
    Intervals,     // union of half-open [a, b)
    Ap,            // arithmetic progression start, start+step, ... (length terms)
    Runs,          // union of [position_i, position_i + length_i)
    Bernoulli,     // each index kept independently with probability p (seeded)
    File,          // one integer per line, ascending, '#' comments
  };

  Kind kind = Kind::ExplicitList;
  std::int64_t horizon = 1;
  Laterality laterality = Laterality::Unilateral;

  std::vector<std::int64_t> elements;                     // ExplicitList
  std::int64_t period = 0, offset = 0;                    // Periodic
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
  std::int64_t ap_start = 0, ap_step = 0, ap_length = 0;  // Ap
  std::vector<std::int64_t> run_positions, run_lengths;   // Runs
  double p = 0.0;                                         // Bernoulli
  std::uint64_t seed = 0;
  std::string path;                                       // File
};

// Build the described set, clipped to [value_lo, horizon).
NatSet materialize(const SetSpec& spec);

// Set file format: UTF-8, one integer per line, strictly ascending, blank
// lines and '#' comments allowed.  Negative entries only for bilateral sets.
NatSet read_set_file(const std::string& path, std::int64_t horizon,
                     Laterality lat = Laterality::Unilateral);
void write_set_file(const std::string& path, const NatSet& set);

const char* kind_name(SetSpec::Kind kind);
SetSpec::Kind kind_from_name(const std::string& name);

}  // namespace rtset
