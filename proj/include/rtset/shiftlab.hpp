#pragma once

// Exact finite-support simulation of unilateral and bilateral backward
// shifts on weighted sequence spaces, return-time sets, the two series
// checks that characterize when a target vector can be tracked along a set
// of times, and the constructive builder that realizes the tracking vector.
//
// The space realization: basis vector e_n has norm v_n (weighted-sup and
// weighted-l1) or v_n^(1/p) (weighted-lp), with the shift acting as a pure
// coordinate move (B x)_k = x_{k+1}.  Both norms are 1-unconditional, so
// coefficientwise domination implies norm domination; several checks below
// lean on that.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtset/natset.hpp"

namespace rtset {

struct WeightSpec {
  enum class Kind {
    Geometric,   // v_n = ratio^|n|  (symmetric decay; plain ratio^n on N)
    Polynomial,  // v_n = (1 + |n|)^exponent
    Constant,    // v_n = value
    Tabulated,   // explicit table over the index window
  };
  Kind kind = Kind::Constant;
  double param = 1.0;
  std::vector<double> table;  // Tabulated only; index 0 = value_lo
};

enum class NormKind { WeightedLp, WeightedSup };

class ShiftSpace {
 public:
  // p is the lp exponent (>= 1); ignored for WeightedSup.
  ShiftSpace(Laterality lat, NormKind norm, double p, WeightSpec weights,
             std::int64_t index_horizon);

  Laterality laterality() const { return lat_; }
  bool bilateral() const { return lat_ == Laterality::Bilateral; }
  NormKind norm_kind() const { return norm_; }
  double lp_exponent() const { return p_; }
  std::int64_t index_lo() const { return bilateral() ? -horizon_ : 0; }
  std::int64_t index_hi() const { return horizon_; }

  // Weight function; closed-form kinds evaluate at any index, tabulated
  // weights throw outside their window.
  double weight(std::int64_t n) const;
  // Norm of e_n: weight for sup and l1, weight^(1/p) otherwise.
  double basis_norm(std::int64_t n) const;

  // sup over representable n of ||B e_n|| / ||e_n||; finite continuity
  // surrogate for the shift being bounded.
  double shift_bound() const;
  // beta(p): whenever ||x|| < beta(p), every coordinate |x_j| and every
  // ||B^j x|| for j <= 2p stays below 1/2.
  double beta(std::int64_t p) const;

 private:
  Laterality lat_;
  NormKind norm_;
  double p_;
  WeightSpec weights_;
  std::int64_t horizon_;
  mutable double shift_bound_ = -1.0;
};

class SparseVector {
 public:
  SparseVector() = default;
  // Entries are merged (summed) and exact zeros dropped.
  static SparseVector from_entries(
      std::vector<std::pair<std::int64_t, double>> entries);
  static SparseVector basis(std::int64_t n) { return from_entries({{n, 1.0}}); }

  std::int64_t support_size() const { return static_cast<std::int64_t>(idx_.size()); }
  bool zero() const { return idx_.empty(); }
  std::int64_t support_min() const;
  std::int64_t support_max() const;
  double coeff(std::int64_t n) const;

  const std::vector<std::int64_t>& indices() const { return idx_; }
  const std::vector<double>& coefficients() const { return coef_; }

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<std::int64_t> idx_;  // strictly increasing
  std::vector<double> coef_;       // no stored zeros
};

SparseVector add(const SparseVector& a, const SparseVector& b);
SparseVector subtract(const SparseVector& a, const SparseVector& b);
SparseVector scale(const SparseVector& a, double c);

// (B^m x)_k = x_{k+m}.  Unilateral shifts kill coordinates pushed below 0;
// bilateral shifts throw when the support would leave the index window,
// since dropping those coordinates would silently change the vector.
SparseVector shift_apply(const ShiftSpace& space, const SparseVector& x,
                         std::int64_t m);

double norm(const ShiftSpace& space, const SparseVector& x);

// ||B^m x - y|| without materializing the shifted vector.
double orbit_distance(const ShiftSpace& space, const SparseVector& x,
                      std::int64_t m, const SparseVector& y);

struct ReturnTimeSet {
  NatSet base;          // {n <= T : ||B^n x - y|| < radius}, horizon T + 1
  SparseVector probe;   // x
  SparseVector center;  // y
  double radius = 0.0;
  std::int64_t time_horizon = 0;  // T
};

ReturnTimeSet return_time_set(const ShiftSpace& space, const SparseVector& x,
                              const SparseVector& y, double radius,
                              std::int64_t time_horizon);
bool recheck(const ShiftSpace& space, const ReturnTimeSet& rts);

// Convergence-at-horizon of sum_{n in A} e_{n+p}: the partial sums are
// Cauchy at the horizon when the remaining tail norm, from the midpoint of
// A onward, stays below tail_tol.  (For these 1-unconditional norms the
// largest increment between two partial sums is the full remaining tail.)
struct SeriesCheck {
  bool converged = false;
  double tail_tol = 0.0;
  double decision_tail = 0.0;  // tail norm from the midpoint element
  double total_norm = 0.0;     // norm of the full finite sum
  std::vector<std::pair<std::int64_t, double>> partial_norms;  // per element
  std::vector<std::pair<std::int64_t, double>> tail_norms;     // per element
  std::int64_t clipped = 0;  // elements with n + p outside the index window
};
SeriesCheck check_series_convergence(const ShiftSpace& space, const NatSet& a,
                                     std::int64_t p, double tail_tol);

// For every m in A and every admissible offset j (0 <= j <= p unilateral,
// |j| <= p bilateral), the tail sum over the other elements must have norm
// below eps:  || sum_{n in A, n > m} e_{n-m+j} ||  (n != m bilaterally).
struct TailTranslateCheck {
  bool passed = false;
  double eps = 0.0;
  double max_norm = 0.0;
  std::int64_t worst_m = 0;
  std::int64_t worst_j = 0;
  std::int64_t pairs_checked = 0;
};
TailTranslateCheck check_tail_translates(const ShiftSpace& space,
                                         const NatSet& a, std::int64_t p,
                                         double eps);

// Greedy left-to-right subset of A whose consecutive gaps all exceed
// min_gap (keeps the first element, then every next element at distance
// > min_gap from the last kept one).
NatSet thin_min_gap(const NatSet& a, std::int64_t min_gap);

// Builds x = sum_{n in A} sum_j y_j e_{n+j} and verifies the tracking bound
// ||B^m x - y|| < eps * sum_j |y_j| for every m in A.  Preconditions: y is
// supported in [1, p] (unilateral) or [-p, p] (bilateral), A's gaps exceed
// p (resp. 2p), and both series checks pass; violations throw
// std::invalid_argument.
struct ReturnVectorReport {
  double eps = 0.0;
  double coeff_abs_sum = 0.0;  // sum_j |y_j|
  double bound = 0.0;          // eps * coeff_abs_sum
  double max_orbit_distance = 0.0;
  std::int64_t argmax_m = 0;
  std::int64_t safe_horizon = 0;  // largest verified m
  SeriesCheck series;
  TailTranslateCheck tails;
  std::vector<std::pair<std::int64_t, double>> orbit_distances;  // per m in A
};
std::pair<SparseVector, ReturnVectorReport> build_return_vector(
    const ShiftSpace& space, const SparseVector& y, const NatSet& a,
    std::int64_t p, double eps, double tail_tol);

// Smallest n <= search_horizon with ||B^{n+r} x_probe - u_center|| < eps for
// every r in R.  Requires R to be contained in the return set of y_witness
// to the same ball (checked).  A miss is reported, not fatal.
struct TransferResult {
  std::optional<std::int64_t> translate;
  std::int64_t searched = 0;
};
TransferResult transfer_block(const ShiftSpace& space,
                              const SparseVector& x_probe,
                              const SparseVector& y_witness,
                              const SparseVector& u_center, double eps,
                              const NatSet& r, std::int64_t search_horizon);

// Convergence-at-horizon of sum_n e_n over n in [0, index_hi): the series
// whose convergence is equivalent to the shift being chaotic.
SeriesCheck chaotic_series_check(const ShiftSpace& space, double tail_tol);

// With A syndetic of gap bound b, every coordinate of the all-ones vector
// (up to N - b) is dominated by sum_{j<=b} B^j (sum_{n in A, n<=N} e_n);
// checked exactly at every truncation N, with the norm inequality sampled.
struct DominationCheck {
  bool coordinatewise_ok = false;
  bool norm_ok = false;
  std::int64_t first_violation = -1;  // coordinate k that failed, if any
  std::int64_t truncations_checked = 0;
};
DominationCheck chaotic_domination_check(const ShiftSpace& space,
                                         const NatSet& a, std::int64_t bound);

// Intersection of the bases: the return-time set of the diagonal operator
// on the product of the balls.  Time horizons must match.
NatSet intersect_return_sets(std::span<const ReturnTimeSet> parts);

}  // namespace rtset
