#pragma once

// Batch command engine behind the CLI.  A RunConfig fully describes one
// invocation; identical configs (seeds included) produce byte-identical
// report.json files apart from the timestamp field.
//
// Exit protocol: 0 = computed, verdicts positive; 2 = computed but a
// verdict failed (a prefix without translate, a divergent series, a failed
// tail bound); 1 = input error (unreadable spec, malformed JSON, bad
// parameters).

#include <string>

#include "rtset/json_io.hpp"

namespace rtset {

struct RunConfig {
  std::string command;        // classify | density | block-check | shift-run | suite
  std::string out_dir = ".";
  std::string format = "both";  // json | csv | both
  std::uint64_t seed = 0;       // nonzero: overrides bernoulli spec seeds
  std::int64_t horizon = 0;     // nonzero: overrides spec horizons
  double tol = 0.0;             // nonzero: overrides shift-run eps
  Json payload;                 // command-specific fields
};

Json to_json(const RunConfig& config);
RunConfig run_config_from_json(const Json& j);
RunConfig load_config_file(const std::string& path);

int run(const RunConfig& config);

}  // namespace rtset
