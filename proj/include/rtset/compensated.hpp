#pragma once

// Neumaier-compensated accumulation, used wherever many small terms are
// summed (harmonic sums, weighted-lp norms).

#include <cmath>

namespace rtset {

struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + carry; }
};

}  // namespace rtset
