#include "rtset/json_io.hpp"

#include <stdexcept>

namespace rtset {

namespace {

const char* lat_name(Laterality lat) {
  return lat == Laterality::Bilateral ? "bilateral" : "unilateral";
}

Laterality lat_from_name(const std::string& s) {
  if (s == "unilateral") return Laterality::Unilateral;
  if (s == "bilateral") return Laterality::Bilateral;
  throw std::invalid_argument("unknown laterality: " + s);
}

Json estimate_json(const Estimate& e) {
  return Json{{"value", e.value}, {"attained", e.attained}};
}

}  // namespace

Json to_json(const SetSpec& spec) {
  Json j;
  j["kind"] = kind_name(spec.kind);
  j["horizon"] = spec.horizon;
  j["laterality"] = lat_name(spec.laterality);
  switch (spec.kind) {
    case SetSpec::Kind::ExplicitList:
      j["elements"] = spec.elements;
      break;
    case SetSpec::Kind::Periodic:
      j["period"] = spec.period;
      j["offset"] = spec.offset;
      break;
    case SetSpec::Kind::Intervals: {
      Json arr = Json::array();
      for (auto [a, b] : spec.intervals) arr.push_back({a, b});
      j["intervals"] = std::move(arr);
      break;
    }
    case SetSpec::Kind::Ap:
      j["start"] = spec.ap_start;
      j["step"] = spec.ap_step;
      j["length"] = spec.ap_length;
      break;
    case SetSpec::Kind::Runs:
      j["positions"] = spec.run_positions;
      j["lengths"] = spec.run_lengths;
      break;
    case SetSpec::Kind::Bernoulli:
      j["p"] = spec.p;
      j["seed"] = spec.seed;
      break;
    case SetSpec::Kind::File:
      j["path"] = spec.path;
      break;
  }
  return j;
}

SetSpec set_spec_from_json(const Json& j) {
  SetSpec spec;
  spec.kind = kind_from_name(j.at("kind").get<std::string>());
  spec.horizon = j.at("horizon").get<std::int64_t>();
  if (j.contains("laterality"))
    spec.laterality = lat_from_name(j["laterality"].get<std::string>());
  switch (spec.kind) {
    case SetSpec::Kind::ExplicitList:
      spec.elements = j.at("elements").get<std::vector<std::int64_t>>();
      break;
    case SetSpec::Kind::Periodic:
      spec.period = j.at("period").get<std::int64_t>();
      spec.offset = j.value("offset", std::int64_t{0});
      break;
    case SetSpec::Kind::Intervals:
      for (const auto& pair : j.at("intervals"))
        spec.intervals.emplace_back(pair.at(0).get<std::int64_t>(),
                                    pair.at(1).get<std::int64_t>());
      break;
    case SetSpec::Kind::Ap:
      spec.ap_start = j.at("start").get<std::int64_t>();
      spec.ap_step = j.at("step").get<std::int64_t>();
      spec.ap_length = j.at("length").get<std::int64_t>();
      break;
    case SetSpec::Kind::Runs:
      spec.run_positions = j.at("positions").get<std::vector<std::int64_t>>();
      spec.run_lengths = j.at("lengths").get<std::vector<std::int64_t>>();
      break;
    case SetSpec::Kind::Bernoulli:
      spec.p = j.at("p").get<double>();
      spec.seed = j.at("seed").get<std::uint64_t>();
      break;
    case SetSpec::Kind::File:
      spec.path = j.at("path").get<std::string>();
      break;
  }
  return spec;
}

Json to_json(const DensityEstimates& est) {
  return Json{{"lower_density", estimate_json(est.lower_density)},
              {"upper_density", estimate_json(est.upper_density)},
              {"banach_lower", estimate_json(est.banach_lower)},
              {"banach_upper", estimate_json(est.banach_upper)},
              {"log_lower", estimate_json(est.log_lower)},
              {"log_upper", estimate_json(est.log_upper)},
              {"log_slope_based", est.log_slope_based}};
}

Json to_json(const DensityProfile& profile) {
  Json windows = Json::array();
  for (const WindowStat& w : profile.windows())
    windows.push_back(Json{{"length", w.length},
                           {"max_count", w.max_count},
                           {"max_at", w.max_at},
                           {"min_count", w.min_count},
                           {"min_at", w.min_at}});
  Json harmonics = Json::array();
  for (const HarmonicStat& h : profile.harmonics())
    harmonics.push_back(Json{{"point", h.point}, {"sum", h.sum}});
  return Json{{"horizon", profile.horizon()},
              {"windows", std::move(windows)},
              {"harmonics", std::move(harmonics)}};
}

Json to_json(const BlockWitness& w) {
  auto elems = w.f.elements();
  std::vector<std::int64_t> prefix(
      elems.begin(),
      elems.begin() + static_cast<std::size_t>(
                          std::min<std::int64_t>(w.depth(),
                                                 static_cast<std::int64_t>(
                                                     elems.size()))));
  Json translates = Json::array();
  for (std::int64_t m = 1; m <= w.depth(); ++m)
    translates.push_back({m, w.translates[static_cast<std::size_t>(m - 1)]});
  return Json{{"variant", "block-witness"},
              {"f_elements", prefix},
              {"f_horizon", w.f.horizon()},
              {"depth", w.depth()},
              {"translates", std::move(translates)}};
}

BlockWitness block_witness_from_json(const Json& j) {
  auto elems = j.at("f_elements").get<std::vector<std::int64_t>>();
  std::int64_t horizon = j.at("f_horizon").get<std::int64_t>();
  BlockWitness w{NatSet::from_elements(horizon, elems), {}};
  std::int64_t depth = j.at("depth").get<std::int64_t>();
  w.translates.assign(static_cast<std::size_t>(depth), 0);
  for (const auto& pair : j.at("translates")) {
    std::int64_t m = pair.at(0).get<std::int64_t>();
    if (m < 1 || m > depth)
      throw std::invalid_argument("block witness: translate index out of range");
    w.translates[static_cast<std::size_t>(m - 1)] =
        pair.at(1).get<std::int64_t>();
  }
  return w;
}

Json to_json(const FamilyCertificate& cert) {
  return std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ThickCertificate>) {
          Json arr = Json::array();
          for (auto [s, l] : c.intervals) arr.push_back({s, l});
          return Json{{"variant", "thick"}, {"intervals", std::move(arr)}};
        } else if constexpr (std::is_same_v<T, SyndeticCertificate>) {
          return Json{{"variant", "syndetic"},
                      {"bound", c.bound},
                      {"range_begin", c.range_begin},
                      {"range_end", c.range_end}};
        } else if constexpr (std::is_same_v<T, PiecewiseSyndeticCertificate>) {
          Json arr = Json::array();
          for (auto [s, l] : c.runs) arr.push_back({s, l});
          return Json{{"variant", "piecewise-syndetic"},
                      {"bound", c.bound},
                      {"runs", std::move(arr)}};
        } else if constexpr (std::is_same_v<T, BoundedStepApCertificate>) {
          return Json{{"variant", "bounded-step-ap"},
                      {"start", c.start},
                      {"step", c.step},
                      {"length", c.length}};
        } else if constexpr (std::is_same_v<T, DensityWitnessCertificate>) {
          return Json{{"variant", "density-witness"},
                      {"delta", c.delta},
                      {"window_start", c.window_start},
                      {"window_length", c.window_length},
                      {"count", c.count}};
        } else {
          return to_json(static_cast<const BlockWitness&>(c));
        }
      },
      cert);
}

FamilyCertificate certificate_from_json(const Json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "thick") {
    ThickCertificate c;
    for (const auto& pair : j.at("intervals"))
      c.intervals.emplace_back(pair.at(0).get<std::int64_t>(),
                               pair.at(1).get<std::int64_t>());
    return c;
  }
  if (variant == "syndetic") {
    return SyndeticCertificate{j.at("bound").get<std::int64_t>(),
                               j.at("range_begin").get<std::int64_t>(),
                               j.at("range_end").get<std::int64_t>()};
  }
  if (variant == "piecewise-syndetic") {
    PiecewiseSyndeticCertificate c;
    c.bound = j.at("bound").get<std::int64_t>();
    for (const auto& pair : j.at("runs"))
      c.runs.emplace_back(pair.at(0).get<std::int64_t>(),
                          pair.at(1).get<std::int64_t>());
    return c;
  }
  if (variant == "bounded-step-ap") {
    return BoundedStepApCertificate{j.at("start").get<std::int64_t>(),
                                    j.at("step").get<std::int64_t>(),
                                    j.at("length").get<std::int64_t>()};
  }
  if (variant == "density-witness") {
    return DensityWitnessCertificate{j.at("delta").get<double>(),
                                     j.at("window_start").get<std::int64_t>(),
                                     j.at("window_length").get<std::int64_t>(),
                                     j.at("count").get<std::int64_t>()};
  }
  if (variant == "block-witness") return block_witness_from_json(j);
  throw std::invalid_argument("unknown certificate variant: " + variant);
}

Json to_json(const ClassifyReport& report) {
  Json j;
  j["horizon"] = report.horizon;
  j["size"] = report.size;
  j["estimates"] = to_json(report.estimates);
  Json certs = Json::array();
  if (report.thick) certs.push_back(to_json(FamilyCertificate{*report.thick}));
  if (report.syndetic)
    certs.push_back(to_json(FamilyCertificate{*report.syndetic}));
  if (report.piecewise_syndetic)
    certs.push_back(to_json(FamilyCertificate{*report.piecewise_syndetic}));
  certs.push_back(to_json(FamilyCertificate{report.longest_ap}));
  if (report.density_witness)
    certs.push_back(to_json(FamilyCertificate{*report.density_witness}));
  j["certificates"] = std::move(certs);
  j["thick_length"] = report.thick_length;
  j["iap_found"] = report.iap.has_value();
  if (report.iap) j["iap"] = to_json(FamilyCertificate{*report.iap});
  if (report.core) {
    j["core"] = Json{{"steps", report.core->steps},
                     {"anchors", report.core->anchors}};
  }
  j["core_max_depth"] = report.core_max_depth;
  return j;
}

Json to_json(const WeightSpec& w) {
  switch (w.kind) {
    case WeightSpec::Kind::Geometric:
      return Json{{"kind", "geometric"}, {"ratio", w.param}};
    case WeightSpec::Kind::Polynomial:
      return Json{{"kind", "polynomial"}, {"exponent", w.param}};
    case WeightSpec::Kind::Constant:
      return Json{{"kind", "constant"}, {"value", w.param}};
    case WeightSpec::Kind::Tabulated:
      return Json{{"kind", "tabulated"}, {"table", w.table}};
  }
  throw std::logic_error("unknown weight kind");
}

WeightSpec weight_spec_from_json(const Json& j) {
  WeightSpec w;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "geometric") {
    w.kind = WeightSpec::Kind::Geometric;
    w.param = j.at("ratio").get<double>();
  } else if (kind == "polynomial") {
    w.kind = WeightSpec::Kind::Polynomial;
    w.param = j.at("exponent").get<double>();
  } else if (kind == "constant") {
    w.kind = WeightSpec::Kind::Constant;
    w.param = j.at("value").get<double>();
  } else if (kind == "tabulated") {
    w.kind = WeightSpec::Kind::Tabulated;
    w.table = j.at("table").get<std::vector<double>>();
  } else {
    throw std::invalid_argument("unknown weight kind: " + kind);
  }
  return w;
}

Json space_to_json(const ShiftSpace& space, const WeightSpec& weights) {
  Json norm;
  if (space.norm_kind() == NormKind::WeightedSup)
    norm = Json{{"kind", "sup"}};
  else
    norm = Json{{"kind", "lp"}, {"p", space.lp_exponent()}};
  return Json{{"laterality", lat_name(space.laterality())},
              {"norm", std::move(norm)},
              {"weights", to_json(weights)},
              {"horizon", space.index_hi()}};
}

ShiftSpace space_from_json(const Json& j, WeightSpec* weights_out) {
  Laterality lat = lat_from_name(j.at("laterality").get<std::string>());
  const Json& norm = j.at("norm");
  NormKind kind = NormKind::WeightedLp;
  double p = 1.0;
  const std::string norm_kind = norm.at("kind").get<std::string>();
  if (norm_kind == "sup") {
    kind = NormKind::WeightedSup;
  } else if (norm_kind == "lp") {
    p = norm.value("p", 1.0);
  } else {
    throw std::invalid_argument("unknown norm kind: " + norm_kind);
  }
  WeightSpec weights = weight_spec_from_json(j.at("weights"));
  if (weights_out) *weights_out = weights;
  return ShiftSpace(lat, kind, p, weights, j.at("horizon").get<std::int64_t>());
}

Json to_json(const SparseVector& v) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < v.indices().size(); ++i)
    entries.push_back({v.indices()[i], v.coefficients()[i]});
  return Json{{"entries", std::move(entries)}};
}

SparseVector sparse_vector_from_json(const Json& j) {
  if (j.contains("basis"))
    return SparseVector::basis(j["basis"].get<std::int64_t>());
  std::vector<std::pair<std::int64_t, double>> entries;
  for (const auto& pair : j.at("entries"))
    entries.emplace_back(pair.at(0).get<std::int64_t>(),
                         pair.at(1).get<double>());
  return SparseVector::from_entries(std::move(entries));
}

Json to_json(const SeriesCheck& c) {
  return Json{{"converged", c.converged},
              {"tail_tol", c.tail_tol},
              {"decision_tail", c.decision_tail},
              {"total_norm", c.total_norm},
              {"clipped", c.clipped},
              {"terms", static_cast<std::int64_t>(c.partial_norms.size())}};
}

Json to_json(const TailTranslateCheck& c) {
  return Json{{"passed", c.passed},
              {"eps", c.eps},
              {"max_norm", c.max_norm},
              {"worst_m", c.worst_m},
              {"worst_j", c.worst_j},
              {"pairs_checked", c.pairs_checked}};
}

Json to_json(const ReturnVectorReport& r) {
  return Json{{"eps", r.eps},
              {"coeff_abs_sum", r.coeff_abs_sum},
              {"bound", r.bound},
              {"max_orbit_distance", r.max_orbit_distance},
              {"argmax_m", r.argmax_m},
              {"safe_horizon", r.safe_horizon},
              {"series", to_json(r.series)},
              {"tails", to_json(r.tails)}};
}

}  // namespace rtset
