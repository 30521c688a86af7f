#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "simpref/error.hpp"

namespace simpref {

/// coth t as a cosh/sinh quotient, switching to the Laurent series
/// 1/t + t/3 - t^3/45 below |t| = 1e-4 where the quotient loses digits
/// against the 1/t pole (next series term is 2t^5/945, far below ulp).
inline double coth_scalar(double t) {
  if (t == 0.0) throw DomainError("coth at zero");
  const double at = std::abs(t);
  if (at < 1e-4) return 1.0 / t + t / 3.0 - t * t * t / 45.0;
  return std::cosh(t) / std::sinh(t);
}

/// Two-sided bounds for the mean of coth t / t over [y, x], plus the
/// corrected center/radius when produced by the fourth-order result.
struct CothBounds {
  double y;
  double x;
  double lower;
  double upper;
  std::optional<double> corrected;
  std::optional<double> corrected_radius;
};

namespace detail {

inline void require_coth_interval(double y, double x) {
  if (!(y > 0.0) || !(y < x))
    throw DomainError("coth bounds require 0 < y < x");
}

inline double coth_mean_base(double y, double x) {
  return 2.0 / 3.0 - (coth_scalar(x) - coth_scalar(y)) / (x - y);
}

}  // namespace detail

/// Bracket of the integral mean of coth t / t over [y, x]:
///   upper = 2/3 - (coth x - coth y)/(x - y)
///   lower = upper - (16/243)(x^2 + xy + y^2)
inline CothBounds coth_mean_bounds(double y, double x) {
  detail::require_coth_interval(y, x);
  const double upper = detail::coth_mean_base(y, x);
  const double lower = upper - 16.0 / 243.0 * (x * x + x * y + y * y);
  return CothBounds{y, x, lower, upper, std::nullopt, std::nullopt};
}

/// Fourth-order disc for the same mean: center
///   2/3 - (coth x - coth y)/(x - y) - (4/135)(x^2 + xy + y^2)
/// and radius (22/1125)(x^5 - y^5)/(x - y). The center coefficient is
/// the [y,x]-average of the pointwise 4/45 t^2 correction term.
inline CothBounds coth_mean_corrected(double y, double x) {
  detail::require_coth_interval(y, x);
  const double corrected =
      detail::coth_mean_base(y, x) - 4.0 / 135.0 * (x * x + x * y + y * y);
  const double x5 = x * x * x * x * x, y5 = y * y * y * y * y;
  const double radius = 22.0 / 1125.0 * (x5 - y5) / (x - y);
  return CothBounds{y, x, corrected - radius, corrected + radius, corrected,
                    radius};
}

/// Pointwise bracket coth^2 t - 1/3 - (16/81) t^2 <= coth t / t
/// <= coth^2 t - 1/3, valid for every t > 0.
inline std::pair<double, double> eq11_pointwise(double t) {
  if (!(t > 0.0)) throw DomainError("eq11_pointwise requires t > 0");
  const double c = coth_scalar(t);
  const double upper = c * c - 1.0 / 3.0;
  return {upper - 16.0 / 81.0 * t * t, upper};
}

}  // namespace simpref
