#include "rtset/shiftlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rtset/compensated.hpp"

namespace rtset {

ShiftSpace::ShiftSpace(Laterality lat, NormKind norm, double p,
                       WeightSpec weights, std::int64_t index_horizon)
    : lat_(lat), norm_(norm), p_(p), weights_(std::move(weights)),
      horizon_(index_horizon) {
  if (index_horizon < 1)
    throw std::invalid_argument("ShiftSpace: index horizon >= 1");
  if (norm_ == NormKind::WeightedLp && !(p_ >= 1.0))
    throw std::invalid_argument("ShiftSpace: lp exponent must be >= 1");
  if (weights_.kind == WeightSpec::Kind::Tabulated) {
    std::size_t need = static_cast<std::size_t>(index_hi() - index_lo());
    if (weights_.table.size() != need)
      throw std::invalid_argument("ShiftSpace: weight table size mismatch");
  }
  for (std::int64_t n = index_lo(); n < index_hi(); ++n)
    if (!(weight(n) > 0.0))
      throw std::invalid_argument("ShiftSpace: weights must be strictly positive");
}

double ShiftSpace::weight(std::int64_t n) const {
  switch (weights_.kind) {
    case WeightSpec::Kind::Geometric:
      return std::pow(weights_.param, static_cast<double>(std::abs(n)));
    case WeightSpec::Kind::Polynomial:
      return std::pow(1.0 + static_cast<double>(std::abs(n)), weights_.param);
    case WeightSpec::Kind::Constant:
      return weights_.param;
    case WeightSpec::Kind::Tabulated: {
      if (n < index_lo() || n >= index_hi())
        throw std::out_of_range("ShiftSpace::weight: index outside table");
      return weights_.table[static_cast<std::size_t>(n - index_lo())];
    }
  }
  throw std::logic_error("ShiftSpace::weight: unknown kind");
}

double ShiftSpace::basis_norm(std::int64_t n) const {
  double v = weight(n);
  if (norm_ == NormKind::WeightedSup || p_ == 1.0) return v;
  return std::pow(v, 1.0 / p_);
}

double ShiftSpace::shift_bound() const {
  if (shift_bound_ >= 0.0) return shift_bound_;
  double worst = 0.0;
  for (std::int64_t n = index_lo() + 1; n < index_hi(); ++n)
    worst = std::max(worst, basis_norm(n - 1) / basis_norm(n));
  shift_bound_ = worst;
  return worst;
}

double ShiftSpace::beta(std::int64_t p) const {
  if (p < 0) throw std::invalid_argument("ShiftSpace::beta: p >= 0");
  double sigma = std::max(1.0, shift_bound());
  double amp = std::pow(sigma, static_cast<double>(2 * p));
  // A coordinate can be as large as ||x|| / ||e_j||.
  double coord = 0.0;
  std::int64_t j_lo = bilateral() ? -2 * p : 0;
  for (std::int64_t j = j_lo; j <= 2 * p; ++j) {
    if (j < index_lo() || j >= index_hi()) continue;
    coord = std::max(coord, 1.0 / basis_norm(j));
  }
  return 0.5 / std::max(amp, coord);
}

SparseVector SparseVector::from_entries(
    std::vector<std::pair<std::int64_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector v;
  for (const auto& [i, c] : entries) {
    if (!v.idx_.empty() && v.idx_.back() == i) {
      v.coef_.back() += c;
      if (v.coef_.back() == 0.0) {
        v.idx_.pop_back();
        v.coef_.pop_back();
      }
    } else if (c != 0.0) {
      v.idx_.push_back(i);
      v.coef_.push_back(c);
    }
  }
  return v;
}

std::int64_t SparseVector::support_min() const {
  if (idx_.empty()) throw std::invalid_argument("SparseVector: zero vector");
  return idx_.front();
}

std::int64_t SparseVector::support_max() const {
  if (idx_.empty()) throw std::invalid_argument("SparseVector: zero vector");
  return idx_.back();
}

double SparseVector::coeff(std::int64_t n) const {
  auto it = std::lower_bound(idx_.begin(), idx_.end(), n);
  if (it == idx_.end() || *it != n) return 0.0;
  return coef_[static_cast<std::size_t>(it - idx_.begin())];
}

namespace {

SparseVector merge(const SparseVector& a, const SparseVector& b, double bs) {
  std::vector<std::pair<std::int64_t, double>> entries;
  entries.reserve(a.indices().size() + b.indices().size());
  for (std::size_t i = 0; i < a.indices().size(); ++i)
    entries.emplace_back(a.indices()[i], a.coefficients()[i]);
  for (std::size_t i = 0; i < b.indices().size(); ++i)
    entries.emplace_back(b.indices()[i], bs * b.coefficients()[i]);
  return SparseVector::from_entries(std::move(entries));
}

}  // namespace

SparseVector add(const SparseVector& a, const SparseVector& b) {
  return merge(a, b, 1.0);
}

SparseVector subtract(const SparseVector& a, const SparseVector& b) {
  return merge(a, b, -1.0);
}

SparseVector scale(const SparseVector& a, double c) {
  std::vector<std::pair<std::int64_t, double>> entries;
  for (std::size_t i = 0; i < a.indices().size(); ++i)
    entries.emplace_back(a.indices()[i], c * a.coefficients()[i]);
  return SparseVector::from_entries(std::move(entries));
}

SparseVector shift_apply(const ShiftSpace& space, const SparseVector& x,
                         std::int64_t m) {
  if (m < 0) throw std::invalid_argument("shift_apply: power must be >= 0");
  std::vector<std::pair<std::int64_t, double>> entries;
  for (std::size_t i = 0; i < x.indices().size(); ++i) {
    std::int64_t k = x.indices()[i] - m;
    if (k < 0 && !space.bilateral()) continue;  // kill rule at index 0
    if (space.bilateral() && k < space.index_lo())
      throw std::out_of_range("shift_apply: bilateral support overflow");
    entries.emplace_back(k, x.coefficients()[i]);
  }
  return SparseVector::from_entries(std::move(entries));
}

double norm(const ShiftSpace& space, const SparseVector& x) {
  if (space.norm_kind() == NormKind::WeightedSup) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.indices().size(); ++i)
      worst = std::max(worst,
                       std::abs(x.coefficients()[i]) * space.weight(x.indices()[i]));
    return worst;
  }
  double p = space.lp_exponent();
  CompensatedSum acc;
  for (std::size_t i = 0; i < x.indices().size(); ++i) {
    double a = std::abs(x.coefficients()[i]);
    acc.add((p == 1.0 ? a : std::pow(a, p)) * space.weight(x.indices()[i]));
  }
  double s = acc.value();
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double orbit_distance(const ShiftSpace& space, const SparseVector& x,
                      std::int64_t m, const SparseVector& y) {
  // Difference coefficients of B^m x - y over the merged support.
  const auto& xi = x.indices();
  const auto& xc = x.coefficients();
  const auto& yi = y.indices();
  const auto& yc = y.coefficients();
  std::size_t i = 0, j = 0;
  bool sup = space.norm_kind() == NormKind::WeightedSup;
  double p = space.lp_exponent();
  double worst = 0.0;
  CompensatedSum acc;
  auto feed = [&](std::int64_t k, double c) {
    if (c == 0.0) return;
    if (k < space.index_lo())
      throw std::out_of_range("orbit_distance: bilateral support overflow");
    double a = std::abs(c);
    if (sup)
      worst = std::max(worst, a * space.weight(k));
    else
      acc.add((p == 1.0 ? a : std::pow(a, p)) * space.weight(k));
  };
  while (i < xi.size() || j < yi.size()) {
    std::int64_t kx = i < xi.size() ? xi[i] - m
                                    : std::numeric_limits<std::int64_t>::max();
    std::int64_t ky = j < yi.size() ? yi[j]
                                    : std::numeric_limits<std::int64_t>::max();
    if (kx < ky) {
      if (kx >= 0 || space.bilateral()) feed(kx, xc[i]);
      ++i;
    } else if (ky < kx) {
      feed(ky, -yc[j]);
      ++j;
    } else {
      if (kx >= 0 || space.bilateral())
        feed(kx, xc[i] - yc[j]);
      else
        feed(ky, -yc[j]);
      ++i;
      ++j;
    }
  }
  if (sup) return worst;
  double s = acc.value();
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

ReturnTimeSet return_time_set(const ShiftSpace& space, const SparseVector& x,
                              const SparseVector& y, double radius,
                              std::int64_t time_horizon) {
  if (!(radius > 0.0))
    throw std::invalid_argument("return_time_set: radius must be positive");
  if (time_horizon < 0)
    throw std::invalid_argument("return_time_set: time horizon >= 0");
  ReturnTimeSet rts{NatSet(time_horizon + 1), x, y, radius, time_horizon};
  for (std::int64_t n = 0; n <= time_horizon; ++n)
    if (orbit_distance(space, x, n, y) < radius) rts.base.insert(n);
  return rts;
}

bool recheck(const ShiftSpace& space, const ReturnTimeSet& rts) {
  for (std::int64_t n = 0; n <= rts.time_horizon; ++n) {
    bool member =
        orbit_distance(space, rts.probe, n, rts.center) < rts.radius;
    if (member != rts.base.contains(n)) return false;
  }
  return true;
}

namespace {

// Norm of sum over a suffix of basis vectors, accumulated backwards so each
// tail is exact; returns per-element tails aligned with `indices`.
std::vector<double> suffix_sum_norms(const ShiftSpace& space,
                                     const std::vector<std::int64_t>& indices) {
  std::vector<double> tails(indices.size());
  if (space.norm_kind() == NormKind::WeightedSup) {
    double worst = 0.0;
    for (std::size_t i = indices.size(); i-- > 0;) {
      worst = std::max(worst, space.weight(indices[i]));
      tails[i] = worst;
    }
  } else {
    double p = space.lp_exponent();
    CompensatedSum acc;
    for (std::size_t i = indices.size(); i-- > 0;) {
      acc.add(space.weight(indices[i]));  // unit coefficients: |1|^p = 1
      tails[i] = p == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / p);
    }
  }
  return tails;
}

}  // namespace

SeriesCheck check_series_convergence(const ShiftSpace& space, const NatSet& a,
                                     std::int64_t p, double tail_tol) {
  if (a.bilateral())
    throw std::invalid_argument("check_series_convergence: A must be unilateral");
  if (p < 0) throw std::invalid_argument("check_series_convergence: p >= 0");
  if (!(tail_tol > 0.0))
    throw std::invalid_argument("check_series_convergence: tail_tol > 0");
  SeriesCheck out;
  out.tail_tol = tail_tol;
  std::vector<std::int64_t> shifted;
  for (std::int64_t n : a) {
    if (n + p >= space.index_hi()) {
      ++out.clipped;
      continue;
    }
    shifted.push_back(n + p);
  }
  if (shifted.empty()) {
    out.converged = true;
    return out;
  }
  std::vector<double> tails = suffix_sum_norms(space, shifted);
  // Forward partial-sum norms, one snapshot per element.
  if (space.norm_kind() == NormKind::WeightedSup) {
    double worst = 0.0;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      worst = std::max(worst, space.weight(shifted[i]));
      out.partial_norms.emplace_back(shifted[i] - p, worst);
    }
    out.total_norm = worst;
  } else {
    double q = space.lp_exponent();
    CompensatedSum acc;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      acc.add(space.weight(shifted[i]));
      out.partial_norms.emplace_back(
          shifted[i] - p, q == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / q));
    }
    out.total_norm = out.partial_norms.back().second;
  }
  for (std::size_t i = 0; i < shifted.size(); ++i)
    out.tail_norms.emplace_back(shifted[i] - p, tails[i]);
  out.decision_tail = tails[shifted.size() / 2];
  out.converged = out.decision_tail < tail_tol;
  return out;
}

TailTranslateCheck check_tail_translates(const ShiftSpace& space,
                                         const NatSet& a, std::int64_t p,
                                         double eps) {
  if (a.bilateral())
    throw std::invalid_argument("check_tail_translates: A must be unilateral");
  if (p < 0) throw std::invalid_argument("check_tail_translates: p >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("check_tail_translates: eps > 0");
  TailTranslateCheck out;
  out.eps = eps;
  auto elems = a.elements();
  bool sup = space.norm_kind() == NormKind::WeightedSup;
  double q = space.lp_exponent();
  std::int64_t j_lo = space.bilateral() ? -p : 0;
  for (std::size_t mi = 0; mi < elems.size(); ++mi) {
    std::int64_t m = elems[mi];
    for (std::int64_t j = j_lo; j <= p; ++j) {
      double value = 0.0;
      if (sup) {
        for (std::size_t ni = 0; ni < elems.size(); ++ni) {
          if (space.bilateral() ? ni == mi : ni <= mi) continue;
          value = std::max(value, space.weight(elems[ni] - m + j));
        }
      } else {
        CompensatedSum acc;
        for (std::size_t ni = 0; ni < elems.size(); ++ni) {
          if (space.bilateral() ? ni == mi : ni <= mi) continue;
          acc.add(space.weight(elems[ni] - m + j));
        }
        value = q == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / q);
      }
      ++out.pairs_checked;
      if (value > out.max_norm) {
        out.max_norm = value;
        out.worst_m = m;
        out.worst_j = j;
      }
    }
  }
  out.passed = out.max_norm < eps;
  return out;
}

NatSet thin_min_gap(const NatSet& a, std::int64_t min_gap) {
  if (min_gap < 0) throw std::invalid_argument("thin_min_gap: min_gap >= 0");
  NatSet out(a.horizon(), a.laterality());
  bool have_last = false;
  std::int64_t last = 0;
  for (std::int64_t v : a) {
    if (!have_last || v - last > min_gap) {
      out.insert(v);
      last = v;
      have_last = true;
    }
  }
  return out;
}

std::pair<SparseVector, ReturnVectorReport> build_return_vector(
    const ShiftSpace& space, const SparseVector& y, const NatSet& a,
    std::int64_t p, double eps, double tail_tol) {
  if (a.bilateral())
    throw std::invalid_argument("build_return_vector: A must be unilateral");
  if (p < 0) throw std::invalid_argument("build_return_vector: p >= 0");
  std::int64_t y_lo = space.bilateral() ? -p : 1;
  for (std::int64_t idx : y.indices())
    if (idx < y_lo || idx > p)
      throw std::invalid_argument(
          "build_return_vector: y must be supported in the [1,p] (or [-p,p]) band");
  std::int64_t need_gap = space.bilateral() ? 2 * p : p;
  if (a.size() >= 2)
    for (std::int64_t g : gap_list(a))
      if (g <= need_gap)
        throw std::invalid_argument(
            "build_return_vector: A has a gap <= p (thin it first)");
  if (!a.empty() && a.max_element() + p >= space.index_hi())
    throw std::out_of_range("build_return_vector: support overflow at horizon");

  ReturnVectorReport report;
  report.eps = eps;
  report.series = check_series_convergence(space, a, p, tail_tol);
  if (!report.series.converged)
    throw std::invalid_argument(
        "build_return_vector: series check failed (divergent at horizon)");
  report.tails = check_tail_translates(space, a, p, eps);
  if (!report.tails.passed)
    throw std::invalid_argument(
        "build_return_vector: tail translate check failed");

  for (double c : y.coefficients()) report.coeff_abs_sum += std::abs(c);
  report.bound = eps * report.coeff_abs_sum;

  std::vector<std::pair<std::int64_t, double>> entries;
  for (std::int64_t n : a)
    for (std::size_t i = 0; i < y.indices().size(); ++i)
      entries.emplace_back(n + y.indices()[i], y.coefficients()[i]);
  SparseVector x = SparseVector::from_entries(std::move(entries));

  for (std::int64_t m : a) {
    double d = orbit_distance(space, x, m, y);
    report.orbit_distances.emplace_back(m, d);
    if (d > report.max_orbit_distance) {
      report.max_orbit_distance = d;
      report.argmax_m = m;
    }
    report.safe_horizon = m;
    bool ok = report.coeff_abs_sum > 0.0 ? d < report.bound : d == 0.0;
    if (!ok)
      throw std::logic_error(
          "build_return_vector: tracking bound violated at m = " +
          std::to_string(m));
  }
  return {std::move(x), std::move(report)};
}

TransferResult transfer_block(const ShiftSpace& space,
                              const SparseVector& x_probe,
                              const SparseVector& y_witness,
                              const SparseVector& u_center, double eps,
                              const NatSet& r, std::int64_t search_horizon) {
  if (r.bilateral())
    throw std::invalid_argument("transfer_block: R must be unilateral");
  if (!(eps > 0.0)) throw std::invalid_argument("transfer_block: eps > 0");
  auto r_elems = r.elements();
  for (std::int64_t rv : r_elems)
    if (!(orbit_distance(space, y_witness, rv, u_center) < eps))
      throw std::invalid_argument(
          "transfer_block: R is not inside the witness return set");
  TransferResult out;
  for (std::int64_t n = 0; n <= search_horizon; ++n) {
    out.searched = n;
    bool all = true;
    for (std::int64_t rv : r_elems)
      if (!(orbit_distance(space, x_probe, n + rv, u_center) < eps)) {
        all = false;
        break;
      }
    if (all) {
      out.translate = n;
      return out;
    }
  }
  return out;
}

SeriesCheck chaotic_series_check(const ShiftSpace& space, double tail_tol) {
  NatSet all(space.index_hi());
  NatSet full = set_complement(all);
  return check_series_convergence(space, full, 0, tail_tol);
}

DominationCheck chaotic_domination_check(const ShiftSpace& space,
                                         const NatSet& a, std::int64_t bound) {
  if (a.bilateral())
    throw std::invalid_argument("chaotic_domination_check: A must be unilateral");
  if (bound < 1)
    throw std::invalid_argument("chaotic_domination_check: bound >= 1");
  DominationCheck out;
  if (a.empty()) return out;
  auto elems = a.elements();
  std::int64_t max_elem = elems.back();

  // Exact coordinate check: position k of sum_{j<=b} B^j s_A is
  // |A ∩ [k, k+b]|, which must be >= 1 for every k <= maxA - b.  Each
  // truncation N only ever needs elements <= k + b <= N, so verifying the
  // full range covers every truncation.
  out.coordinatewise_ok = true;
  std::size_t next = 0;
  for (std::int64_t k = 0; k + bound <= max_elem; ++k) {
    while (next < elems.size() && elems[next] < k) ++next;
    if (next >= elems.size() || elems[next] > k + bound) {
      out.coordinatewise_ok = false;
      out.first_violation = k;
      break;
    }
  }

  // Norm inequality at log-spaced truncations.
  out.norm_ok = true;
  for (std::int64_t trunc = 1; trunc <= max_elem; trunc *= 2) {
    ++out.truncations_checked;
    std::vector<std::pair<std::int64_t, double>> ones, combo;
    for (std::int64_t k = 0; k + bound <= trunc; ++k) ones.emplace_back(k, 1.0);
    for (std::int64_t v : a) {
      if (v > trunc) break;
      for (std::int64_t j = 0; j <= bound; ++j)
        if (v - j >= 0) combo.emplace_back(v - j, 1.0);
    }
    double lhs = norm(space, SparseVector::from_entries(std::move(ones)));
    double rhs = norm(space, SparseVector::from_entries(std::move(combo)));
    if (lhs > rhs) {
      out.norm_ok = false;
      break;
    }
  }
  return out;
}

NatSet intersect_return_sets(std::span<const ReturnTimeSet> parts) {
  if (parts.empty())
    throw std::invalid_argument("intersect_return_sets: need at least one part");
  NatSet out = parts[0].base;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].time_horizon != parts[0].time_horizon)
      throw std::invalid_argument("intersect_return_sets: time horizon mismatch");
    out = set_intersection(out, parts[i].base);
  }
  return out;
}

}  // namespace rtset
