#pragma once

// Bit-packed finite-horizon integer sets.
//
// A NatSet stores a subset of [0, H) (unilateral) or of the window [-H, H)
// (bilateral, offset-encoded) in packed 64-bit words.  Values are treated
// as immutable once built: every operation below returns a fresh set and
// reports whenever the horizon clipped anything.

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace rtset {

enum class Laterality { Unilateral, Bilateral };

class NatSet;
struct TranslateResult;
TranslateResult translate(const NatSet& a, std::int64_t k);

class NatSet {
 public:
  // Empty set over [0, horizon) or [-horizon, horizon).
  explicit NatSet(std::int64_t horizon,
                  Laterality lat = Laterality::Unilateral);

  static NatSet from_elements(std::int64_t horizon,
                              std::span<const std::int64_t> elements,
                              Laterality lat = Laterality::Unilateral);

  std::int64_t horizon() const { return horizon_; }
  Laterality laterality() const { return lat_; }
  bool bilateral() const { return lat_ == Laterality::Bilateral; }

  // Inclusive lower / exclusive upper bound of representable values.
  std::int64_t value_lo() const { return bilateral() ? -horizon_ : 0; }
  std::int64_t value_hi() const { return horizon_; }

  bool contains(std::int64_t v) const noexcept;
  void insert(std::int64_t v);  // throws std::out_of_range outside the window
  void erase(std::int64_t v);

  std::int64_t size() const;
  bool empty() const;
  std::int64_t min_element() const;  // throws std::invalid_argument if empty
  std::int64_t max_element() const;

  std::vector<std::int64_t> elements() const;

  // Strictly increasing iteration over stored values.
  class const_iterator {
   public:
    using value_type = std::int64_t;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    const_iterator() = default;
    const_iterator(const NatSet* s, std::int64_t bit) : set_(s), bit_(bit) {}
    std::int64_t operator*() const;
    const_iterator& operator++();
    const_iterator operator++(int);
    bool operator==(const const_iterator&) const = default;

   private:
    const NatSet* set_ = nullptr;
    std::int64_t bit_ = 0;  // current stored bit index
  };
  const_iterator begin() const;
  const_iterator end() const;

  bool operator==(const NatSet& other) const;

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  friend class const_iterator;
  friend NatSet set_union(const NatSet&, const NatSet&);
  friend NatSet set_intersection(const NatSet&, const NatSet&);
  friend NatSet set_difference(const NatSet&, const NatSet&);
  friend NatSet set_complement(const NatSet&);
  friend TranslateResult translate(const NatSet&, std::int64_t);

  std::int64_t bit_count() const { return bilateral() ? 2 * horizon_ : horizon_; }
  std::int64_t find_set_bit(std::int64_t from) const;  // bit_count() if none
  void clear_tail_bits();

  std::int64_t horizon_;
  Laterality lat_;
  std::int64_t offset_;  // stored bit = value + offset_
  std::vector<std::uint64_t> words_;
};

// {a + k : a in A} clipped to A's window; `dropped` counts clipped elements.
struct TranslateResult {
  NatSet set;
  std::int64_t dropped;
};

enum class BoolOp { Union, Intersection, Difference, ComplementOfA };

NatSet set_union(const NatSet& a, const NatSet& b);
NatSet set_intersection(const NatSet& a, const NatSet& b);
NatSet set_difference(const NatSet& a, const NatSet& b);
NatSet set_complement(const NatSet& a);
NatSet apply_boolean(const NatSet& a, const NatSet& b, BoolOp op);

// Successive differences of the sorted elements; requires |A| >= 2.
std::vector<std::int64_t> gap_list(const NatSet& a);

// Cut A along a cover of [0, H) and shift the pieces:  U_j (n_j + (A & I_j)).
// The cover must leave no hole; shifts must be >= 0; unilateral only.
struct CutShiftResult {
  NatSet set;
  std::int64_t dropped;  // elements shifted past the horizon
};
CutShiftResult cut_and_shift(const NatSet& a, std::span<const NatSet> cover,
                             std::span<const std::int64_t> shifts);

}  // namespace rtset
