#include "rtset/run.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace rtset {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kReservedKeys = {"command", "out",    "format",
                                                "seed",    "horizon", "tol"};

std::string timestamp_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_report(const RunConfig& config, Json results) {
  Json report;
  report["command"] = config.command;
  report["timestamp"] = timestamp_utc();
  report["config"] = to_json(config);
  report["results"] = std::move(results);
  write_text(fs::path(config.out_dir) / "report.json", report.dump(2) + "\n");
}

bool wants_json(const RunConfig& c) { return c.format != "csv"; }
bool wants_csv(const RunConfig& c) { return c.format != "json"; }

SetSpec spec_from_payload(const RunConfig& config, const Json& j) {
  SetSpec spec = set_spec_from_json(j);
  if (config.horizon > 0) spec.horizon = config.horizon;
  if (config.seed != 0 && spec.kind == SetSpec::Kind::Bernoulli)
    spec.seed = config.seed;
  return spec;
}

ClassifyParams classify_params_from_json(const Json& j) {
  ClassifyParams p;
  if (j.contains("thick_lengths"))
    p.thick_lengths = j["thick_lengths"].get<std::vector<std::int64_t>>();
  p.ps_bound = j.value("ps_bound", p.ps_bound);
  p.ps_run_length = j.value("ps_run_length", p.ps_run_length);
  p.ap_step_bound = j.value("ap_step_bound", p.ap_step_bound);
  p.extraction_bound = j.value("extraction_bound", p.extraction_bound);
  p.extraction_depth = j.value("extraction_depth", p.extraction_depth);
  p.iap_span_fraction = j.value("iap_span_fraction", p.iap_span_fraction);
  p.iap_step_bound = j.value("iap_step_bound", p.iap_step_bound);
  if (j.contains("window_lengths"))
    p.window_lengths = j["window_lengths"].get<std::vector<std::int64_t>>();
  if (j.contains("log_points"))
    p.log_points = j["log_points"].get<std::vector<std::int64_t>>();
  p.tail_fraction = j.value("tail_fraction", p.tail_fraction);
  return p;
}

// (n, c(n)/n, W+(n)/n, W-(n)/n) rows; grid rows without a computed window
// leave the last two columns empty.
void write_density_csv(const fs::path& path, const DensityProfile& profile,
                       const std::string& grid) {
  std::vector<std::int64_t> points;
  std::int64_t h = profile.horizon();
  if (grid == "pow10") {
    for (std::int64_t n = 1; n <= h; n *= 10) points.push_back(n);
  } else if (grid.rfind("linear:", 0) == 0) {
    std::int64_t step = std::stoll(grid.substr(7));
    if (step < 1) throw std::invalid_argument("density csv: linear step >= 1");
    for (std::int64_t n = step; n <= h; n += step) points.push_back(n);
  } else if (grid == "pow2" || grid.empty()) {
    for (std::int64_t n = 1; n <= h; n *= 2) points.push_back(n);
  } else {
    throw std::invalid_argument("density csv: unknown grid " + grid);
  }
  for (const WindowStat& w : profile.windows()) points.push_back(w.length);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::string csv = "n,prefix_ratio,window_max_ratio,window_min_ratio\n";
  auto windows = profile.windows();
  for (std::int64_t n : points) {
    csv += std::to_string(n) + "," +
           std::to_string(static_cast<double>(profile.prefix_count(n)) /
                          static_cast<double>(n));
    auto it = std::find_if(windows.begin(), windows.end(),
                           [&](const WindowStat& w) { return w.length == n; });
    if (it != windows.end()) {
      csv += "," + std::to_string(static_cast<double>(it->max_count) / n) +
             "," + std::to_string(static_cast<double>(it->min_count) / n);
    } else {
      csv += ",,";
    }
    csv += "\n";
  }
  write_text(path, csv);
}

void recheck_report_certificates(const Json& results, const NatSet& set) {
  if (!results.contains("certificates")) return;
  for (const Json& cj : results["certificates"]) {
    FamilyCertificate cert = certificate_from_json(cj);
    if (!recheck(set, cert))
      throw std::logic_error("emitted certificate failed re-check");
  }
}

int run_classify(const RunConfig& config) {
  SetSpec spec = spec_from_payload(config, config.payload.at("spec"));
  NatSet set = materialize(spec);
  ClassifyParams params = config.payload.contains("params")
                              ? classify_params_from_json(config.payload["params"])
                              : ClassifyParams{};
  ClassifyReport report = classify(set, params);
  Json results = to_json(report);
  results["spec"] = to_json(spec);
  recheck_report_certificates(results, set);
  if (wants_json(config)) write_report(config, results);
  if (wants_csv(config)) {
    auto lengths = params.window_lengths.empty()
                       ? default_window_lengths(set.horizon())
                       : params.window_lengths;
    auto points = params.log_points.empty() ? default_log_points(set.horizon())
                                            : params.log_points;
    DensityProfile profile = DensityProfile::compute(set, lengths, points);
    fs::create_directories(fs::path(config.out_dir) / "traces");
    write_density_csv(fs::path(config.out_dir) / "traces" / "density.csv",
                      profile, config.payload.value("grid", "pow2"));
  }
  std::cout << "classify: |A| = " << report.size << " over [0, "
            << report.horizon << ")";
  if (report.syndetic) std::cout << ", syndetic bound " << report.syndetic->bound;
  std::cout << ", upper density " << report.estimates.upper_density.value
            << "\n";
  return 0;
}

int run_density(const RunConfig& config) {
  SetSpec spec = spec_from_payload(config, config.payload.at("spec"));
  NatSet set = materialize(spec);
  const Json params = config.payload.value("params", Json::object());
  auto lengths = params.contains("window_lengths")
                     ? params["window_lengths"].get<std::vector<std::int64_t>>()
                     : default_window_lengths(set.horizon());
  auto points = params.contains("log_points")
                    ? params["log_points"].get<std::vector<std::int64_t>>()
                    : default_log_points(set.horizon());
  double tail = params.value("tail_fraction", 0.5);
  DensityProfile profile = DensityProfile::compute(set, lengths, points);
  DensityEstimates est = density_estimates(profile, tail);
  Json results;
  results["spec"] = to_json(spec);
  results["estimates"] = to_json(est);
  results["profile"] = to_json(profile);
  if (wants_json(config)) write_report(config, results);
  if (wants_csv(config)) {
    fs::create_directories(fs::path(config.out_dir) / "traces");
    write_density_csv(fs::path(config.out_dir) / "traces" / "density.csv",
                      profile, config.payload.value("grid", "pow2"));
  }
  std::cout << "density: upper " << est.upper_density.value << " at n = "
            << est.upper_density.attained << ", banach upper "
            << est.banach_upper.value << " at length "
            << est.banach_upper.attained << "\n";
  return 0;
}

int run_block_check(const RunConfig& config) {
  SetSpec s_spec = spec_from_payload(config, config.payload.at("s_spec"));
  SetSpec f_spec = spec_from_payload(config, config.payload.at("f_spec"));
  NatSet s = materialize(s_spec);
  NatSet f = materialize(f_spec);
  std::int64_t depth = config.payload.value("depth", std::int64_t{32});
  depth = std::min(depth, f.size());
  BlockCheckResult result = block_certificate_check(s, f, depth);
  Json results;
  results["s_spec"] = to_json(s_spec);
  results["f_spec"] = to_json(f_spec);
  results["depth"] = depth;
  if (result.witness) {
    if (!recheck(s, *result.witness))
      throw std::logic_error("block witness failed re-check");
    results["witness"] = to_json(*result.witness);
    results["found"] = true;
  } else {
    results["found"] = false;
    results["failed_prefix"] = result.failed_prefix;
    results["searched_limit"] = result.searched_limit;
    results["partial_translates"] = result.partial;
  }
  if (config.payload.contains("dense_basis_search")) {
    // Heuristic probe for a dense F whose blocks translate into S.  The
    // converse direction has no finite certificate in general, so a miss
    // proves nothing; the result is labeled non-authoritative.
    const Json& dj = config.payload["dense_basis_search"];
    DenseBlockSearchResult heur = greedy_dense_block_basis(
        s, dj.at("window_length").get<std::int64_t>(),
        dj.value("depth", std::int64_t{16}));
    Json hj{{"authoritative", false},
            {"seed_window_density", heur.seed_window_density},
            {"pruned", heur.pruned},
            {"found", heur.witness.has_value()}};
    if (heur.witness) hj["witness"] = to_json(*heur.witness);
    results["dense_basis_search"] = std::move(hj);
  }
  if (wants_json(config)) write_report(config, results);
  if (wants_csv(config) && result.witness) {
    std::string csv = "m,translate\n";
    for (std::int64_t m = 1; m <= result.witness->depth(); ++m)
      csv += std::to_string(m) + "," +
             std::to_string(
                 result.witness->translates[static_cast<std::size_t>(m - 1)]) +
             "\n";
    fs::create_directories(fs::path(config.out_dir) / "traces");
    write_text(fs::path(config.out_dir) / "traces" / "translates.csv", csv);
  }
  if (result.witness) {
    std::cout << "block-check: witness to depth " << depth << "\n";
    return 0;
  }
  std::cout << "block-check: no translate for prefix " << result.failed_prefix
            << " (searched n <= " << result.searched_limit << ")\n";
  return 2;
}

int run_shift(const RunConfig& config) {
  WeightSpec weights;
  ShiftSpace space = space_from_json(config.payload.at("space"), &weights);
  SparseVector y = sparse_vector_from_json(config.payload.at("y"));
  SetSpec a_spec = spec_from_payload(config, config.payload.at("a_spec"));
  NatSet a = materialize(a_spec);
  std::int64_t p = config.payload.at("p").get<std::int64_t>();
  double eps = config.tol > 0.0 ? config.tol
                                : config.payload.at("eps").get<double>();
  double tail_tol = config.payload.value("tail_tol", 1e-6);
  std::int64_t big_t = config.payload.at("T").get<std::int64_t>();
  if (config.payload.value("thin", false))
    a = thin_min_gap(a, space.bilateral() ? 2 * p : p);

  Json results;
  results["a_spec"] = to_json(a_spec);
  results["space"] = space_to_json(space, weights);
  results["space_stats"] = Json{{"shift_bound", space.shift_bound()},
                                {"beta_p", space.beta(p)}};

  SeriesCheck series = check_series_convergence(space, a, p, tail_tol);
  results["series_check"] = to_json(series);
  TailTranslateCheck tails = check_tail_translates(space, a, p, eps);
  results["tail_check"] = to_json(tails);
  if (!series.converged || !tails.passed) {
    results["verdict"] = "checks-failed";
    if (wants_json(config)) write_report(config, results);
    std::cout << "shift-run: checks failed (series "
              << (series.converged ? "ok" : "divergent-at-horizon")
              << ", tails " << (tails.passed ? "ok" : "exceeded eps") << ")\n";
    return 2;
  }

  auto [x, report] = build_return_vector(space, y, a, p, eps, tail_tol);
  results["build"] = to_json(report);
  ReturnTimeSet rts = return_time_set(space, x, y, report.bound, big_t);
  results["return_set_size"] = rts.base.size();
  if (rts.base.size() >= 2) {
    SyndeticCertificate cert = syndetic_gap_bound(rts.base);
    results["return_set_syndetic_bound"] = cert.bound;
  }

  if (config.payload.contains("transfer")) {
    const Json& tj = config.payload["transfer"];
    NatSet r = NatSet::from_elements(
        a.horizon(), tj.at("r_elements").get<std::vector<std::int64_t>>());
    Json probes = Json::array();
    for (std::int64_t s : tj.at("delays").get<std::vector<std::int64_t>>()) {
      std::vector<std::pair<std::int64_t, double>> entries;
      for (std::size_t i = 0; i < x.indices().size(); ++i)
        entries.emplace_back(x.indices()[i] + s, x.coefficients()[i]);
      SparseVector probe = SparseVector::from_entries(std::move(entries));
      TransferResult tr =
          transfer_block(space, probe, x, y, report.bound, r, big_t);
      Json pj{{"delay", s}, {"found", tr.translate.has_value()}};
      if (tr.translate) pj["translate"] = *tr.translate;
      probes.push_back(std::move(pj));
    }
    results["transfer"] = std::move(probes);
  }

  if (config.payload.contains("chaotic")) {
    const Json& cj = config.payload["chaotic"];
    SeriesCheck full = chaotic_series_check(
        space, cj.value("tail_tol", tail_tol));
    Json chaos{{"series", to_json(full)}};
    if (cj.contains("syndetic_spec")) {
      NatSet sa = materialize(spec_from_payload(config, cj["syndetic_spec"]));
      DominationCheck dom =
          chaotic_domination_check(space, sa, cj.at("bound").get<std::int64_t>());
      chaos["domination"] = Json{{"coordinatewise_ok", dom.coordinatewise_ok},
                                 {"norm_ok", dom.norm_ok},
                                 {"truncations_checked", dom.truncations_checked}};
    }
    results["chaotic"] = std::move(chaos);
  }

  results["verdict"] = "ok";
  if (wants_json(config)) write_report(config, results);
  if (wants_csv(config)) {
    std::string csv = "n,distance\n";
    for (std::int64_t n = 0; n <= big_t; ++n)
      csv += std::to_string(n) + "," +
             std::to_string(orbit_distance(space, x, n, y)) + "\n";
    fs::create_directories(fs::path(config.out_dir) / "traces");
    write_text(fs::path(config.out_dir) / "traces" / "orbit_distance.csv", csv);
  }
  std::cout << "shift-run: max orbit distance " << report.max_orbit_distance
            << " (bound " << report.bound << "), return set size "
            << rts.base.size() << "\n";
  return 0;
}

int run_suite(const RunConfig& config) {
  const Json& runs = config.payload.at("runs");
  struct Item {
    std::string name;
    RunConfig child;
    int exit_code = 1;
  };
  std::vector<Item> items;
  for (const Json& rj : runs) {
    Item item;
    item.name = rj.at("name").get<std::string>();
    item.child = run_config_from_json(rj.at("config"));
    if (item.child.command == "suite")
      throw std::invalid_argument("suite: nested suites are not supported");
    item.child.out_dir =
        (fs::path(config.out_dir) / item.name).string();
    items.push_back(std::move(item));
  }

  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) jobs = static_cast<std::size_t>(v);
  }
  jobs = std::min(jobs, items.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        fs::create_directories(items[i].child.out_dir);
        items[i].exit_code = run(items[i].child);
      } catch (const std::exception& e) {
        std::cerr << "suite run " << items[i].name << ": " << e.what() << "\n";
        items[i].exit_code = 1;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Json summary;
  summary["command"] = "suite";
  Json entries = Json::array();
  int overall = 0;
  bool any_error = false, any_verdict = false;
  for (const Item& item : items) {
    entries.push_back(Json{{"name", item.name}, {"exit", item.exit_code}});
    any_error |= item.exit_code == 1;
    any_verdict |= item.exit_code == 2;
  }
  overall = any_error ? 1 : (any_verdict ? 2 : 0);
  summary["runs"] = std::move(entries);
  summary["overall_exit"] = overall;
  write_text(fs::path(config.out_dir) / "suite_summary.json",
             summary.dump(2) + "\n");
  std::cout << "suite: " << items.size() << " runs, overall exit " << overall
            << "\n";
  return overall;
}

}  // namespace

Json to_json(const RunConfig& config) {
  Json j;
  j["command"] = config.command;
  j["out"] = config.out_dir;
  j["format"] = config.format;
  j["seed"] = config.seed;
  j["horizon"] = config.horizon;
  j["tol"] = config.tol;
  for (const auto& [key, value] : config.payload.items()) j[key] = value;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig config;
  config.command = j.at("command").get<std::string>();
  config.out_dir = j.value("out", std::string("."));
  config.format = j.value("format", std::string("both"));
  config.seed = j.value("seed", std::uint64_t{0});
  config.horizon = j.value("horizon", std::int64_t{0});
  config.tol = j.value("tol", 0.0);
  config.payload = Json::object();
  for (const auto& [key, value] : j.items()) {
    if (std::find(kReservedKeys.begin(), kReservedKeys.end(), key) ==
        kReservedKeys.end())
      config.payload[key] = value;
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

int run(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv" &&
      config.format != "both")
    throw std::invalid_argument("run: format must be json, csv or both");
  fs::create_directories(config.out_dir);
  if (config.command == "classify") return run_classify(config);
  if (config.command == "density") return run_density(config);
  if (config.command == "block-check") return run_block_check(config);
  if (config.command == "shift-run") return run_shift(config);
  if (config.command == "suite") return run_suite(config);
  throw std::invalid_argument("run: unknown command " + config.command);
}

}  // namespace rtset
