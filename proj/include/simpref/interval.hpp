#pragma once

#include <cmath>
#include <stdexcept>

namespace simpref {

/// Closed interval [a, b] with a < b, both finite.
struct Interval {
  double a;
  double b;

  Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
      throw std::invalid_argument("Interval requires finite a < b");
  }

  double width() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }
};

}  // namespace simpref
