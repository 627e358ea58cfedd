#pragma once

// Exact accumulator for sums of signed powers of two, used as an
// independent oracle when all weights are dyadic (geometric ratio 1/2):
// the accumulated value is a fixed-point binary number with no rounding
// until the final conversion to double.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rtset {

class DyadicSum {
 public:
  static constexpr int kFracBits = 4096;

  DyadicSum() : frac_(kFracBits / 64, 0) {}

  // Adds 2^exponent; exponent in [-kFracBits, 62].
  void add_pow2(int exponent) {
    if (exponent > 62 || exponent < -kFracBits)
      throw std::out_of_range("DyadicSum: exponent outside accumulator range");
    if (exponent >= 0) {
      integer_ += std::uint64_t{1} << exponent;
      return;
    }
    int bit = -exponent - 1;  // fractional bit index, 0 = the 1/2 place
    int w = bit / 64;
    std::uint64_t add = std::uint64_t{1} << (63 - bit % 64);
    while (true) {
      std::uint64_t before = frac_[static_cast<std::size_t>(w)];
      std::uint64_t after = before + add;
      frac_[static_cast<std::size_t>(w)] = after;
      if (after > before) return;  // no wrap, no carry
      if (w == 0) {
        ++integer_;
        return;
      }
      --w;
      add = 1;  // carry into the less-deep word
    }
  }

  double to_double() const {
    double v = 0.0;
    // Smallest terms first so the single rounding happens at the end.
    for (std::size_t w = frac_.size(); w-- > 0;) {
      std::uint64_t bits = frac_[w];
      for (int b = 0; b < 64; ++b)
        if ((bits >> b) & 1u) {
          int frac_bit = static_cast<int>(w) * 64 + (63 - b);
          v += std::ldexp(1.0, -(frac_bit + 1));
        }
    }
    return v + static_cast<double>(integer_);
  }

 private:
  std::uint64_t integer_ = 0;
  std::vector<std::uint64_t> frac_;  // bit i of word w = 2^-(64w + i') big-endian
};

}  // namespace rtset
