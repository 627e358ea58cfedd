#include "rtset/setspec.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rtset {

namespace {

void insert_clipped(NatSet& s, std::int64_t v) {
  if (v >= s.value_lo() && v < s.value_hi()) s.insert(v);
}

NatSet materialize_periodic(const SetSpec& spec) {
  if (spec.period < 1)
    throw std::invalid_argument("materialize: periodic needs period >= 1");
  NatSet s(spec.horizon, spec.laterality);
  std::int64_t off = ((spec.offset % spec.period) + spec.period) % spec.period;
  std::int64_t lo = s.value_lo();
  // first value >= lo congruent to off mod period
  std::int64_t first = lo + (((off - lo) % spec.period) + spec.period) % spec.period;
  for (std::int64_t v = first; v < s.value_hi(); v += spec.period) s.insert(v);
  return s;
}

NatSet materialize_bernoulli(const SetSpec& spec) {
  if (spec.p < 0.0 || spec.p > 1.0)
    throw std::invalid_argument("materialize: bernoulli p outside [0, 1]");
  NatSet s(spec.horizon, spec.laterality);
  std::mt19937_64 rng(spec.seed);
  // 53-bit uniform draw; avoids std::bernoulli_distribution so that the
  // bits depend only on (p, seed), not on the standard library build.
  for (std::int64_t v = s.value_lo(); v < s.value_hi(); ++v) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < spec.p) s.insert(v);
  }
  return s;
}

}  // namespace

NatSet materialize(const SetSpec& spec) {
  switch (spec.kind) {
    case SetSpec::Kind::ExplicitList: {
      NatSet s(spec.horizon, spec.laterality);
      for (std::int64_t v : spec.elements) insert_clipped(s, v);
      return s;
    }
    case SetSpec::Kind::Periodic:
      return materialize_periodic(spec);
    case SetSpec::Kind::Intervals: {
      NatSet s(spec.horizon, spec.laterality);
      for (auto [a, b] : spec.intervals) {
        if (a > b) throw std::invalid_argument("materialize: interval with a > b");
        for (std::int64_t v = std::max(a, s.value_lo());
             v < std::min(b, s.value_hi()); ++v)
          s.insert(v);
      }
      return s;
    }
    case SetSpec::Kind::Ap: {
      if (spec.ap_step == 0)
        throw std::invalid_argument("materialize: ap step must be nonzero");
      if (spec.ap_length < 0)
        throw std::invalid_argument("materialize: ap length must be >= 0");
      NatSet s(spec.horizon, spec.laterality);
      for (std::int64_t i = 0; i < spec.ap_length; ++i)
        insert_clipped(s, spec.ap_start + i * spec.ap_step);
      return s;
    }
    case SetSpec::Kind::Runs: {
      if (spec.run_positions.size() != spec.run_lengths.size())
        throw std::invalid_argument(
            "materialize: runs need matching positions and lengths");
      NatSet s(spec.horizon, spec.laterality);
      for (std::size_t i = 0; i < spec.run_positions.size(); ++i) {
        if (spec.run_lengths[i] < 0)
          throw std::invalid_argument("materialize: negative run length");
        std::int64_t a = spec.run_positions[i];
        for (std::int64_t v = std::max(a, s.value_lo());
             v < std::min(a + spec.run_lengths[i], s.value_hi()); ++v)
          s.insert(v);
      }
      return s;
    }
    case SetSpec::Kind::Bernoulli:
      return materialize_bernoulli(spec);
    case SetSpec::Kind::File:
      return read_set_file(spec.path, spec.horizon, spec.laterality);
  }
  throw std::invalid_argument("materialize: unknown kind");
}

NatSet read_set_file(const std::string& path, std::int64_t horizon,
                     Laterality lat) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_set_file: cannot open " + path);
  NatSet s(horizon, lat);
  std::string line;
  bool have_prev = false;
  std::int64_t prev = 0;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::int64_t v;
    if (!(ls >> v)) {
      std::string rest;
      ls.clear();
      ls >> rest;
      if (rest.empty()) continue;  // blank / comment-only line
      throw std::runtime_error("read_set_file: malformed line " +
                               std::to_string(lineno) + " in " + path);
    }
    std::string trailing;
    if (ls >> trailing)
      throw std::runtime_error("read_set_file: trailing junk on line " +
                               std::to_string(lineno) + " in " + path);
    if (have_prev && v <= prev)
      throw std::runtime_error("read_set_file: entries not ascending at line " +
                               std::to_string(lineno) + " in " + path);
    if (v < 0 && lat == Laterality::Unilateral)
      throw std::runtime_error("read_set_file: negative entry in unilateral set, line " +
                               std::to_string(lineno));
    prev = v;
    have_prev = true;
    insert_clipped(s, v);
  }
  return s;
}

void write_set_file(const std::string& path, const NatSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_set_file: cannot open " + path);
  out << "# horizon " << set.horizon()
      << (set.bilateral() ? " bilateral" : " unilateral") << "\n";
  for (std::int64_t v : set) out << v << "\n";
}

const char* kind_name(SetSpec::Kind kind) {
  switch (kind) {
    case SetSpec::Kind::ExplicitList: return "explicit";
    case SetSpec::Kind::Periodic: return "periodic";
    case SetSpec::Kind::Intervals: return "intervals";
    case SetSpec::Kind::Ap: return "ap";
    case SetSpec::Kind::Runs: return "runs";
    case SetSpec::Kind::Bernoulli: return "bernoulli";
    case SetSpec::Kind::File: return "file";
  }
  return "unknown";
}

SetSpec::Kind kind_from_name(const std::string& name) {
  if (name == "explicit") return SetSpec::Kind::ExplicitList;
  if (name == "periodic") return SetSpec::Kind::Periodic;
  if (name == "intervals") return SetSpec::Kind::Intervals;
  if (name == "ap") return SetSpec::Kind::Ap;
  if (name == "runs") return SetSpec::Kind::Runs;
  if (name == "bernoulli") return SetSpec::Kind::Bernoulli;
  if (name == "file") return SetSpec::Kind::File;
  throw std::invalid_argument("unknown set spec kind: " + name);
}

}  // namespace rtset
