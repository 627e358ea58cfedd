// rtset: classify integer sets, compute density profiles, check block
// certificates, and run weighted backward-shift experiments from the
// command line.  Every subcommand writes report.json (and CSV traces) into
// --out; exit code 2 means "computed, but a verdict came back negative".

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rtset/run.hpp"

namespace {

rtset::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  rtset::Json j;
  in >> j;
  return j;
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir = "rtset-out";
  std::string format = "both";
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  double tol = 0.0;

  void attach(CLI::App* cmd, bool config_only) {
    if (!config_only)
      cmd->add_option("--config", config_path, "full run config JSON");
    else
      cmd->add_option("--config", config_path, "full run config JSON")
          ->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format, "json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    cmd->add_option("--seed", seed, "override bernoulli spec seeds");
    cmd->add_option("--horizon", horizon, "override spec horizons");
    cmd->add_option("--tol", tol, "override shift-run eps");
  }

  rtset::RunConfig base(const std::string& command, CLI::App* cmd) const {
    rtset::RunConfig config;
    if (!config_path.empty()) {
      config = rtset::load_config_file(config_path);
      if (config.command != command)
        throw std::runtime_error("config file is for command '" +
                                 config.command + "'");
    }
    config.command = command;
    if (config_path.empty() || cmd->count("--out")) config.out_dir = out_dir;
    if (config_path.empty() || cmd->count("--format")) config.format = format;
    if (cmd->count("--seed")) config.seed = seed;
    if (cmd->count("--horizon")) config.horizon = horizon;
    if (cmd->count("--tol")) config.tol = tol;
    return config;
  }
};

rtset::Json spec_option(const std::string& spec_path,
                        const std::string& set_path, std::int64_t horizon) {
  if (!spec_path.empty()) return load_json_file(spec_path);
  if (!set_path.empty()) {
    if (horizon <= 0)
      throw std::runtime_error("--set needs --horizon for the file spec");
    return rtset::Json{{"kind", "file"}, {"path", set_path}, {"horizon", horizon}};
  }
  throw std::runtime_error("provide --spec, --set or --config");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-horizon set combinatorics and backward-shift lab"};
  app.require_subcommand(1);

  CommonFlags classify_flags, density_flags, block_flags, shift_flags,
      suite_flags;
  std::string classify_spec, classify_set, density_spec, density_set;
  std::string block_s_spec, block_f_spec;
  std::int64_t block_depth = 32;
  std::string density_grid = "pow2";

  CLI::App* classify = app.add_subcommand("classify", "all family predicates");
  classify_flags.attach(classify, false);
  classify->add_option("--spec", classify_spec, "SetSpec JSON file");
  classify->add_option("--set", classify_set, "plain set file");

  CLI::App* density = app.add_subcommand("density", "density profile + CSV");
  density_flags.attach(density, false);
  density->add_option("--spec", density_spec, "SetSpec JSON file");
  density->add_option("--set", density_set, "plain set file");
  density->add_option("--grid", density_grid, "csv grid: pow2, pow10, linear:N");

  CLI::App* block = app.add_subcommand("block-check", "prefix translate check");
  block_flags.attach(block, false);
  block->add_option("--s-spec", block_s_spec, "SetSpec JSON for S");
  block->add_option("--f-spec", block_f_spec, "SetSpec JSON for F");
  block->add_option("--depth", block_depth, "prefixes to verify");

  CLI::App* shift = app.add_subcommand("shift-run", "backward shift experiment");
  shift_flags.attach(shift, true);

  CLI::App* suite = app.add_subcommand("suite", "run a batch of configs");
  suite_flags.attach(suite, true);

  CLI11_PARSE(app, argc, argv);

  try {
    rtset::RunConfig config;
    if (classify->parsed()) {
      config = classify_flags.base("classify", classify);
      if (!classify_spec.empty() || !classify_set.empty())
        config.payload["spec"] =
            spec_option(classify_spec, classify_set, classify_flags.horizon);
    } else if (density->parsed()) {
      config = density_flags.base("density", density);
      if (!density_spec.empty() || !density_set.empty())
        config.payload["spec"] =
            spec_option(density_spec, density_set, density_flags.horizon);
      config.payload["grid"] = density_grid;
    } else if (block->parsed()) {
      config = block_flags.base("block-check", block);
      if (!block_s_spec.empty())
        config.payload["s_spec"] = load_json_file(block_s_spec);
      if (!block_f_spec.empty())
        config.payload["f_spec"] = load_json_file(block_f_spec);
      if (block->count("--depth")) config.payload["depth"] = block_depth;
    } else if (shift->parsed()) {
      config = shift_flags.base("shift-run", shift);
    } else {
      config = suite_flags.base("suite", suite);
    }
    return rtset::run(config);
  } catch (const std::exception& e) {
    std::cerr << "rtset: " << e.what() << "\n";
    return 1;
  }
}
