#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "simpref/expr.hpp"
#include "simpref/interval.hpp"
#include "simpref/parallel.hpp"

namespace simpref {

/// Estimated (or user-supplied) min/max of the order-th derivative over
/// an interval. samples == 0 marks values supplied by the caller as
/// exact; every bound built from such a range is labelled analytic.
struct DerivativeRange {
  int order;  // 1..4
  Interval interval;
  double m;
  double M;
  std::size_t samples;
  bool refined;
};

/// Wraps caller-known extrema (analytic ranges for witnesses and
/// closed-form test cases). Bypasses sampling entirely.
inline DerivativeRange exact_range(int order, Interval I, double m, double M) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("exact_range: order must be in 1..4");
  if (!(m <= M)) throw std::invalid_argument("exact_range: requires m <= M");
  return DerivativeRange{order, I, m, M, 0, false};
}

namespace detail {

/// Chebyshev-Lobatto nodes on [a,b], ascending, endpoints exact.
/// Nested under n -> 2n-1, which keeps [m,M] monotone in the sample
/// count for the doubling sequence 2^k + 1.
inline std::vector<double> chebyshev_nodes(Interval I, std::size_t n) {
  const double mid = I.midpoint(), half = 0.5 * I.width();
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = mid - half * std::cos(std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(n - 1));
  x.front() = I.a;
  x.back() = I.b;
  return x;
}

/// Vertex abscissa of the parabola through three points, or NaN when
/// the points are collinear.
inline double parabola_vertex(double x0, double y0, double x1, double y1,
                              double x2, double y2) {
  const double d10 = x1 - x0, d12 = x1 - x2;
  const double num = d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0);
  const double den = d10 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return x1 - 0.5 * num / den;
}

}  // namespace detail

/// Min/max of the order-th derivative over I: dense Chebyshev sampling
/// plus one parabolic-fit probe at every interior grid extremum. The
/// probe is accepted only when its vertex stays between the neighbours,
/// and can only widen [m, M]. Empirical, not interval-rigorous; bounds
/// built from the result carry sampled-range confidence.
inline DerivativeRange estimate_derivative_range(const Expr& e, Interval I,
                                                 int order,
                                                 std::size_t samples = 1025) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("estimate_derivative_range: order must be in 1..4");
  if (samples < 3)
    throw std::invalid_argument("estimate_derivative_range: samples must be >= 3");

  const std::vector<double> x = detail::chebyshev_nodes(I, samples);
  const std::vector<double> y = parallel_map<double>(
      samples, [&](std::size_t j) { return eval_jet(e, x[j], order).deriv(order); });

  double m = y[0], M = y[0];
  for (std::size_t j = 1; j < samples; ++j) {
    if (y[j] < m) m = y[j];
    if (y[j] > M) M = y[j];
  }
  const double grid_m = m, grid_M = M;

  for (std::size_t j = 1; j + 1 < samples; ++j) {
    const bool is_max = y[j] > y[j - 1] && y[j] > y[j + 1];
    const bool is_min = y[j] < y[j - 1] && y[j] < y[j + 1];
    if (!is_max && !is_min) continue;
    const double v = detail::parabola_vertex(x[j - 1], y[j - 1], x[j], y[j],
                                             x[j + 1], y[j + 1]);
    if (!(v > x[j - 1] && v < x[j + 1])) continue;
    const double yv = eval_jet(e, v, order).deriv(order);
    if (is_max && yv > M) M = yv;
    if (is_min && yv < m) m = yv;
  }

  const bool refined =
      std::abs(m - grid_m) > 1e-12 * std::max(1.0, std::abs(grid_m)) ||
      std::abs(M - grid_M) > 1e-12 * std::max(1.0, std::abs(grid_M));
  return DerivativeRange{order, I, m, M, samples, refined};
}

}  // namespace simpref
