#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "simpref/error.hpp"
#include "simpref/expr.hpp"
#include "simpref/interval.hpp"
#include "simpref/ranges.hpp"
#include "simpref/simpson.hpp"

namespace simpref {

/// Identifier of the bound family that produced an enclosure.
enum class Theorem { HH, HHm2, HHM2, EQ7, THM0, THM1, THM2, EQ4, THM3, THM4 };

inline const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::HH: return "HH";
    case Theorem::HHm2: return "HH-m2";
    case Theorem::HHM2: return "HH-M2";
    case Theorem::EQ7: return "EQ7";
    case Theorem::THM0: return "THM0";
    case Theorem::THM1: return "THM1";
    case Theorem::THM2: return "THM2";
    case Theorem::EQ4: return "EQ4";
    case Theorem::THM3: return "THM3";
    case Theorem::THM4: return "THM4";
  }
  return "?";
}

/// The scaling constant each theorem multiplies its range/width term by.
/// HH and the refined HH brackets are value-based, table entry 1/24
/// (the midpoint-side coefficient of Eqs. (5)/(6)); plain HH has none.
inline double theorem_constant(Theorem t) {
  switch (t) {
    case Theorem::HH: return 0.0;
    case Theorem::HHm2: return 1.0 / 24.0;
    case Theorem::HHM2: return 1.0 / 24.0;
    case Theorem::EQ7: return 1.0 / 36.0;
    case Theorem::THM0: return 5.0 / 72.0;
    case Theorem::THM1: return 1.0 / 162.0;
    case Theorem::THM2: return 1.0 / 1152.0;
    case Theorem::EQ4: return 1.0 / 2880.0;
    case Theorem::THM3: return 1.0 / 162.0;
    case Theorem::THM4: return 11.0 / 57600.0;
  }
  return 0.0;
}

enum class Confidence { AnalyticRange, SampledRange };

inline const char* confidence_name(Confidence c) {
  return c == Confidence::AnalyticRange ? "analytic-range" : "sampled-range";
}

/// Certified two-sided bracket for a scalar quantity (T_g for the
/// theorem bounds, the integral mean for the HH family), tagged with
/// the producing theorem and the provenance of the ranges it used.
struct Enclosure {
  double lower;
  double upper;
  Theorem theorem;
  double constant;
  Confidence confidence;

  double width() const { return upper - lower; }
  bool contains(double x, double tol = 0.0) const {
    return x >= lower - tol && x <= upper + tol;
  }
};

enum class Convexity { Convex, Concave };

namespace detail {

inline Confidence range_confidence(const DerivativeRange& r) {
  return r.samples == 0 ? Confidence::AnalyticRange : Confidence::SampledRange;
}

/// Sampled ranges can under-estimate extrema; widen M-m about the
/// midpoint by `inflation` before use. Analytic ranges pass through.
inline std::pair<double, double> effective_range(const DerivativeRange& r,
                                                 double inflation) {
  if (r.samples == 0 || inflation == 1.0) return {r.m, r.M};
  if (!(inflation >= 1.0))
    throw std::invalid_argument("inflation factor must be >= 1");
  const double c = 0.5 * (r.m + r.M);
  const double h = 0.5 * (r.M - r.m) * inflation;
  return {c - h, c + h};
}

inline void require_order(const DerivativeRange& r, int order, const char* who) {
  if (r.order != order)
    throw std::invalid_argument(std::string(who) + ": derivative range of order " +
                                std::to_string(order) + " required");
}

inline Enclosure symmetric(double radius, Theorem thm, Confidence conf) {
  return Enclosure{-radius, radius, thm, theorem_constant(thm), conf};
}

/// Sampled sign check of the order-th derivative over a 257-point grid,
/// tolerance -1e-12. Skipped when jets of that order are unavailable
/// (abs in the tree); the caller's assertion then stands unchecked.
inline void check_sign(const Expr& e, Interval I, int order, bool nonneg,
                       const char* what) {
  constexpr std::size_t kGrid = 257;
  std::vector<double> x;
  try {
    x = chebyshev_nodes(I, kGrid);
    for (double xi : x) {
      const double d = eval_jet(e, xi, order).deriv(order);
      const double s = nonneg ? d : -d;
      if (s < -1e-12)
        throw ConvexityError(std::string(what) + " fails at t = " +
                             format_double(xi) + " (derivative " +
                             std::to_string(order) + " = " + format_double(d) + ")");
    }
  } catch (const NonSmoothError&) {
  }
}

}  // namespace detail

/// Hermite-Hadamard bracket for the integral mean of g over I:
/// [g(m), (g(a)+g(b))/2] when convex, sides swapped when concave.
/// The claimed convexity is checked by sampling g'' when available.
inline Enclosure hh_enclosure(const Expr& e, Interval I, Convexity cvx) {
  detail::check_sign(e, I, 2, cvx == Convexity::Convex,
                     cvx == Convexity::Convex ? "convexity assertion"
                                              : "concavity assertion");
  const double mid = eval(e, I.midpoint());
  const double ends = 0.5 * (eval(e, I.a) + eval(e, I.b));
  const double lo = cvx == Convexity::Convex ? mid : ends;
  const double hi = cvx == Convexity::Convex ? ends : mid;
  return Enclosure{lo, hi, Theorem::HH, theorem_constant(Theorem::HH),
                   Confidence::AnalyticRange};
}

/// Intersection of the two refined HH brackets for the integral mean,
///   Eq.(5): [g(m) + m2 h^2/24, (g(a)+g(b))/2 - m2 h^2/12]
///   Eq.(6): [(g(a)+g(b))/2 - M2 h^2/12, g(m) + M2 h^2/24]
/// Tagged by whichever single bracket is narrower. An empty
/// intersection means the supplied range is too loose and is reported,
/// never clamped.
inline Enclosure hh_refined_enclosure(const Expr& e, Interval I,
                                      const DerivativeRange& r2,
                                      double inflation = 1.05) {
  detail::require_order(r2, 2, "hh_refined_enclosure");
  const auto [m2, M2] = detail::effective_range(r2, inflation);
  const double mid = eval(e, I.midpoint());
  const double ends = 0.5 * (eval(e, I.a) + eval(e, I.b));
  const double h2 = I.width() * I.width();
  const double eq5_lo = mid + m2 * h2 / 24.0, eq5_hi = ends - m2 * h2 / 12.0;
  const double eq6_lo = ends - M2 * h2 / 12.0, eq6_hi = mid + M2 * h2 / 24.0;
  double lo = std::max(eq5_lo, eq6_lo);
  double hi = std::min(eq5_hi, eq6_hi);
  if (lo > hi) {
    // m2 == M2 collapses both brackets to the exact mean; an ulp of
    // rounding can invert the degenerate intersection. Real inversions
    // (range too loose) are orders of magnitude larger.
    if (lo - hi > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)))
      throw EmptyIntersectionError(
          "refined HH brackets do not intersect; second-derivative range too loose");
    std::swap(lo, hi);
  }
  const Theorem tag =
      (eq5_hi - eq5_lo) <= (eq6_hi - eq6_lo) ? Theorem::HHm2 : Theorem::HHM2;
  return Enclosure{lo, hi, tag, theorem_constant(tag),
                   detail::range_confidence(r2)};
}

/// |T_g| <= (5/72)(M1 - m1)(b - a) for C^1 integrands.
inline Enclosure bound_c1(Interval I, const DerivativeRange& r1,
                          double inflation = 1.05) {
  detail::require_order(r1, 1, "bound_c1");
  const auto [m, M] = detail::effective_range(r1, inflation);
  return detail::symmetric(5.0 / 72.0 * (M - m) * I.width(), Theorem::THM0,
                           detail::range_confidence(r1));
}

/// |T_g| <= (1/162)(M2 - m2)(b - a)^2 for C^2 integrands.
inline Enclosure bound_c2(Interval I, const DerivativeRange& r2,
                          double inflation = 1.05) {
  detail::require_order(r2, 2, "bound_c2");
  const auto [m, M] = detail::effective_range(r2, inflation);
  const double h = I.width();
  return detail::symmetric((M - m) * h * h / 162.0, Theorem::THM1,
                           detail::range_confidence(r2));
}

/// The coarser HH-derived bound |T_g| <= (1/36)(M2 - m2)(b - a)^2.
inline Enclosure bound_c2_coarse(Interval I, const DerivativeRange& r2,
                                 double inflation = 1.05) {
  detail::require_order(r2, 2, "bound_c2_coarse");
  const auto [m, M] = detail::effective_range(r2, inflation);
  const double h = I.width();
  return detail::symmetric((M - m) * h * h / 36.0, Theorem::EQ7,
                           detail::range_confidence(r2));
}

/// |T_g| <= (1/1152)(M3 - m3)(b - a)^3 for C^3 integrands (sharp).
inline Enclosure bound_c3(Interval I, const DerivativeRange& r3,
                          double inflation = 1.05) {
  detail::require_order(r3, 3, "bound_c3");
  const auto [m, M] = detail::effective_range(r3, inflation);
  const double h = I.width();
  return detail::symmetric((M - m) * h * h * h / 1152.0, Theorem::THM2,
                           detail::range_confidence(r3));
}

/// Exact-remainder enclosure T_g in [m4, M4] (b-a)^4 / 2880, the
/// asymmetric mean-value form of the classical C^4 error term.
inline Enclosure c4_enclosure(Interval I, const DerivativeRange& r4,
                              double inflation = 1.05) {
  detail::require_order(r4, 4, "c4_enclosure");
  const auto [m, M] = detail::effective_range(r4, inflation);
  const double h = I.width();
  const double h4 = h * h * h * h;
  return Enclosure{m * h4 / 2880.0, M * h4 / 2880.0, Theorem::EQ4,
                   theorem_constant(Theorem::EQ4), detail::range_confidence(r4)};
}

/// 0 <= T_g <= (b-a)^2/162 [(g''(a)+g''(b))/2 - g''(m)] for C^4
/// integrands with convex g''. The convexity is checked by sampling the
/// fourth derivative's sign.
inline Enclosure bound_convex2(const Expr& e, Interval I) {
  detail::check_sign(e, I, 4, true, "convexity of the second derivative");
  const double d2a = eval_jet(e, I.a, 2).deriv(2);
  const double d2b = eval_jet(e, I.b, 2).deriv(2);
  const double d2m = eval_jet(e, I.midpoint(), 2).deriv(2);
  const double h = I.width();
  // the true upper term is >= 0; negative roundoff dust is clamped
  const double upper =
      std::max(0.0, h * h / 162.0 * (0.5 * (d2a + d2b) - d2m));
  return Enclosure{0.0, upper, Theorem::THM3, theorem_constant(Theorem::THM3),
                   Confidence::AnalyticRange};
}

/// |T_g - correction| <= (11/57600)(M4 - m4)(b - a)^4: symmetric
/// enclosure for the corrected-rule defect.
inline Enclosure bound_corrected(Interval I, const DerivativeRange& r4,
                                 double inflation = 1.05) {
  detail::require_order(r4, 4, "bound_corrected");
  const auto [m, M] = detail::effective_range(r4, inflation);
  const double h = I.width();
  return detail::symmetric(11.0 / 57600.0 * (M - m) * h * h * h * h,
                           Theorem::THM4, detail::range_confidence(r4));
}

/// The same fourth-order result re-centered to enclose T_g itself:
/// [c - r, c + r] with c the correction term. Width-comparable with the
/// other T_g enclosures.
inline Enclosure thm4_t_enclosure(const Expr& e, Interval I,
                                  const DerivativeRange& r4,
                                  double inflation = 1.05) {
  const Enclosure sym = bound_corrected(I, r4, inflation);
  const double c = correction_term_mean(e, I);
  return Enclosure{c + sym.lower, c + sym.upper, Theorem::THM4, sym.constant,
                   sym.confidence};
}

/// Majorization check: for u + v = a + b inside I and convex h,
/// 2 h(m) <= h(u) + h(v) <= h(a) + h(b), slack tolerance -1e-12.
inline bool majorization_check(const Expr& h, Interval I, double u, double v) {
  if (std::abs((u + v) - (I.a + I.b)) > 1e-12)
    throw std::invalid_argument("majorization_check: u + v must equal a + b");
  if (!I.contains(u) || !I.contains(v))
    throw std::invalid_argument("majorization_check: u, v must lie in [a, b]");
  const double huv = eval(h, u) + eval(h, v);
  const double left = huv - 2.0 * eval(h, I.midpoint());
  const double right = (eval(h, I.a) + eval(h, I.b)) - huv;
  return left >= -1e-12 && right >= -1e-12;
}

enum class SmoothnessClass { C1, C2, C3, C4, C4Convex2 };

inline const char* smoothness_name(SmoothnessClass c) {
  switch (c) {
    case SmoothnessClass::C1: return "c1";
    case SmoothnessClass::C2: return "c2";
    case SmoothnessClass::C3: return "c3";
    case SmoothnessClass::C4: return "c4";
    case SmoothnessClass::C4Convex2: return "c4-convex2";
  }
  return "?";
}

inline int smoothness_order(SmoothnessClass c) {
  switch (c) {
    case SmoothnessClass::C1: return 1;
    case SmoothnessClass::C2: return 2;
    case SmoothnessClass::C3: return 3;
    default: return 4;
  }
}

struct RangeOptions {
  std::size_t samples = 1025;
  double inflation = 1.05;
  /// When set, replaces the sampled estimate for its own order.
  std::optional<DerivativeRange> user_range;
};

/// Every T_g enclosure applicable at the given smoothness class, in
/// theorem order THM0, THM1, EQ7, THM2, EQ4, THM3, THM4.
inline std::vector<Enclosure> all_bounds(const Expr& e, Interval I,
                                         SmoothnessClass cls,
                                         const RangeOptions& opt = {}) {
  const int top = smoothness_order(cls);
  const auto range_for = [&](int n) -> DerivativeRange {
    if (opt.user_range && opt.user_range->order == n) return *opt.user_range;
    return estimate_derivative_range(e, I, n, opt.samples);
  };
  std::vector<Enclosure> out;
  out.push_back(bound_c1(I, range_for(1), opt.inflation));
  if (top >= 2) {
    const DerivativeRange r2 = range_for(2);
    out.push_back(bound_c2(I, r2, opt.inflation));
    out.push_back(bound_c2_coarse(I, r2, opt.inflation));
  }
  if (top >= 3) out.push_back(bound_c3(I, range_for(3), opt.inflation));
  if (top >= 4) {
    const DerivativeRange r4 = range_for(4);
    out.push_back(c4_enclosure(I, r4, opt.inflation));
    if (cls == SmoothnessClass::C4Convex2) {
      out.push_back(bound_convex2(e, I));
      out.push_back(thm4_t_enclosure(e, I, r4, opt.inflation));
    }
  }
  return out;
}

namespace detail {

/// Tie-break preference, best first: THM4 < THM3 < EQ4 < THM2 < THM1 <
/// EQ7 < THM0.
inline int theorem_rank(Theorem t) {
  switch (t) {
    case Theorem::THM4: return 0;
    case Theorem::THM3: return 1;
    case Theorem::EQ4: return 2;
    case Theorem::THM2: return 3;
    case Theorem::THM1: return 4;
    case Theorem::EQ7: return 5;
    case Theorem::THM0: return 6;
    default: return 7;
  }
}

}  // namespace detail

/// The narrowest applicable enclosure for T_g; exact width ties broken
/// by theorem preference.
inline Enclosure best_bound(const Expr& e, Interval I, SmoothnessClass cls,
                            const RangeOptions& opt = {}) {
  const std::vector<Enclosure> all = all_bounds(e, I, cls, opt);
  const Enclosure* best = &all.front();
  for (const Enclosure& cand : all) {
    if (cand.width() < best->width() ||
        (cand.width() == best->width() &&
         detail::theorem_rank(cand.theorem) < detail::theorem_rank(best->theorem)))
      best = &cand;
  }
  return *best;
}

}  // namespace simpref
