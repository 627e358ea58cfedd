#include "rtset/natset.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace rtset {

namespace {
constexpr std::int64_t kWordBits = 64;

std::int64_t word_count(std::int64_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

void check_compatible(const NatSet& a, const NatSet& b, const char* op) {
  if (a.horizon() != b.horizon() || a.laterality() != b.laterality())
    throw std::invalid_argument(std::string(op) +
                                ": horizon or laterality mismatch");
}
}  // namespace

NatSet::NatSet(std::int64_t horizon, Laterality lat)
    : horizon_(horizon),
      lat_(lat),
      offset_(lat == Laterality::Bilateral ? horizon : 0) {
  if (horizon < 1) throw std::invalid_argument("NatSet: horizon must be >= 1");
  words_.assign(word_count(bit_count()), 0);
}

NatSet NatSet::from_elements(std::int64_t horizon,
                             std::span<const std::int64_t> elements,
                             Laterality lat) {
  NatSet s(horizon, lat);
  for (std::int64_t v : elements) s.insert(v);
  return s;
}

void NatSet::clear_tail_bits() {
  std::int64_t tail = bit_count() % kWordBits;
  if (tail) words_.back() &= (~std::uint64_t{0}) >> (kWordBits - tail);
}

bool NatSet::contains(std::int64_t v) const noexcept {
  if (v < value_lo() || v >= value_hi()) return false;
  std::int64_t bit = v + offset_;
  return (words_[bit / kWordBits] >> (bit % kWordBits)) & 1u;
}

void NatSet::insert(std::int64_t v) {
  if (v < value_lo() || v >= value_hi())
    throw std::out_of_range("NatSet::insert: value " + std::to_string(v) +
                            " outside window");
  std::int64_t bit = v + offset_;
  words_[bit / kWordBits] |= std::uint64_t{1} << (bit % kWordBits);
}

void NatSet::erase(std::int64_t v) {
  if (v < value_lo() || v >= value_hi()) return;
  std::int64_t bit = v + offset_;
  words_[bit / kWordBits] &= ~(std::uint64_t{1} << (bit % kWordBits));
}

std::int64_t NatSet::size() const {
  std::int64_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool NatSet::empty() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

std::int64_t NatSet::find_set_bit(std::int64_t from) const {
  std::int64_t nbits = bit_count();
  if (from >= nbits) return nbits;
  std::int64_t wi = from / kWordBits;
  std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from % kWordBits));
  while (true) {
    if (w) return wi * kWordBits + std::countr_zero(w);
    if (++wi >= static_cast<std::int64_t>(words_.size())) return nbits;
    w = words_[wi];
  }
}

std::int64_t NatSet::min_element() const {
  std::int64_t bit = find_set_bit(0);
  if (bit == bit_count()) throw std::invalid_argument("NatSet: empty set");
  return bit - offset_;
}

std::int64_t NatSet::max_element() const {
  for (std::int64_t wi = static_cast<std::int64_t>(words_.size()) - 1; wi >= 0;
       --wi) {
    if (words_[wi]) {
      std::int64_t bit =
          wi * kWordBits + (kWordBits - 1 - std::countl_zero(words_[wi]));
      return bit - offset_;
    }
  }
  throw std::invalid_argument("NatSet: empty set");
}

std::vector<std::int64_t> NatSet::elements() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::int64_t v : *this) out.push_back(v);
  return out;
}

std::int64_t NatSet::const_iterator::operator*() const {
  return bit_ - set_->offset_;
}

NatSet::const_iterator& NatSet::const_iterator::operator++() {
  bit_ = set_->find_set_bit(bit_ + 1);
  return *this;
}

NatSet::const_iterator NatSet::const_iterator::operator++(int) {
  const_iterator tmp = *this;
  ++(*this);
  return tmp;
}

NatSet::const_iterator NatSet::begin() const {
  return const_iterator(this, find_set_bit(0));
}

NatSet::const_iterator NatSet::end() const {
  return const_iterator(this, bit_count());
}

bool NatSet::operator==(const NatSet& other) const {
  return horizon_ == other.horizon_ && lat_ == other.lat_ &&
         words_ == other.words_;
}

TranslateResult translate(const NatSet& a, std::int64_t k) {
  NatSet out(a.horizon(), a.laterality());
  std::int64_t nbits = a.bit_count();
  std::int64_t nwords = static_cast<std::int64_t>(a.words_.size());
  if (k > -nbits && k < nbits) {
    // Move every stored bit by k positions, word at a time.
    std::int64_t q = k >= 0 ? k / kWordBits : -((-k + kWordBits - 1) / kWordBits);
    std::int64_t r = k - q * kWordBits;  // r in [0, 64)
    for (std::int64_t i = 0; i < nwords; ++i) {
      std::uint64_t w = a.words_[i];
      if (!w) continue;
      std::int64_t lo = i + q;
      if (lo >= 0 && lo < nwords) out.words_[lo] |= (r == 0) ? w : (w << r);
      if (r != 0) {
        std::int64_t hi = lo + 1;
        if (hi >= 0 && hi < nwords) out.words_[hi] |= w >> (kWordBits - r);
      }
    }
    out.clear_tail_bits();
  }
  return TranslateResult{out, a.size() - out.size()};
}

NatSet set_union(const NatSet& a, const NatSet& b) {
  check_compatible(a, b, "set_union");
  NatSet out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] |= b.words_[i];
  return out;
}

NatSet set_intersection(const NatSet& a, const NatSet& b) {
  check_compatible(a, b, "set_intersection");
  NatSet out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= b.words_[i];
  return out;
}

NatSet set_difference(const NatSet& a, const NatSet& b) {
  check_compatible(a, b, "set_difference");
  NatSet out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= ~b.words_[i];
  return out;
}

NatSet set_complement(const NatSet& a) {
  NatSet out = a;
  for (std::uint64_t& w : out.words_) w = ~w;
  out.clear_tail_bits();
  return out;
}

NatSet apply_boolean(const NatSet& a, const NatSet& b, BoolOp op) {
  switch (op) {
    case BoolOp::Union: return set_union(a, b);
    case BoolOp::Intersection: return set_intersection(a, b);
    case BoolOp::Difference: return set_difference(a, b);
    case BoolOp::ComplementOfA: return set_complement(a);
  }
  throw std::invalid_argument("apply_boolean: unknown op");
}

std::vector<std::int64_t> gap_list(const NatSet& a) {
  if (a.size() < 2)
    throw std::invalid_argument("gap_list: need at least 2 elements");
  std::vector<std::int64_t> gaps;
  gaps.reserve(static_cast<std::size_t>(a.size()) - 1);
  bool first = true;
  std::int64_t prev = 0;
  for (std::int64_t v : a) {
    if (!first) gaps.push_back(v - prev);
    prev = v;
    first = false;
  }
  return gaps;
}

CutShiftResult cut_and_shift(const NatSet& a, std::span<const NatSet> cover,
                             std::span<const std::int64_t> shifts) {
  if (a.bilateral())
    throw std::invalid_argument("cut_and_shift: unilateral sets only");
  if (cover.empty() || cover.size() != shifts.size())
    throw std::invalid_argument(
        "cut_and_shift: need q >= 1 parts with one shift each");
  NatSet covered(a.horizon());
  for (const NatSet& part : cover) {
    check_compatible(a, part, "cut_and_shift");
    covered = set_union(covered, part);
  }
  if (covered.size() != a.horizon())
    throw std::invalid_argument("cut_and_shift: cover leaves a hole in [0, H)");
  NatSet out(a.horizon());
  std::int64_t dropped = 0;
  for (std::size_t j = 0; j < cover.size(); ++j) {
    if (shifts[j] < 0)
      throw std::invalid_argument("cut_and_shift: shifts must be >= 0");
    TranslateResult piece = translate(set_intersection(a, cover[j]), shifts[j]);
    dropped += piece.dropped;
    out = set_union(out, piece.set);
  }
  return CutShiftResult{out, dropped};
}

}  // namespace rtset
