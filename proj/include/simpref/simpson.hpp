#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "simpref/error.hpp"
#include "simpref/expr.hpp"
#include "simpref/interval.hpp"

namespace simpref {

namespace detail {

struct OracleState {
  const std::function<double(double)>& f;
  double eps_scale;       // tolerance is relative to max(1, |first estimate|)
  std::size_t bisections = 0;
  std::size_t bisection_cap;
};

inline double oracle_eval(const OracleState& st, double x) {
  const double v = st.f(x);
  if (!std::isfinite(v))
    throw DomainError("integrand not finite at t = " + std::to_string(x));
  return v;
}

inline double simpson_panel(double a, double b, double fa, double fm, double fb) {
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

// Adaptive bisection; each accepted panel gets one Richardson level
// (the diff/15 correction of the two-panel refinement).
inline double oracle_recurse(OracleState& st, double a, double b, double fa,
                             double fm, double fb, double whole, double eps,
                             int depth) {
  if (++st.bisections > st.bisection_cap)
    throw ConvergenceError("oracle integral: panel cap exceeded");
  if (depth > 60)
    throw ConvergenceError("oracle integral: recursion depth exceeded");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = oracle_eval(st, lm), frm = oracle_eval(st, rm);
  const double left = simpson_panel(a, m, fa, flm, fm);
  const double right = simpson_panel(m, b, fm, frm, fb);
  const double diff = (left + right) - whole;
  if (std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
  const double half_eps = 0.5 * eps;
  return oracle_recurse(st, a, m, fa, flm, fm, left, half_eps, depth + 1) +
         oracle_recurse(st, m, b, fm, frm, fb, right, half_eps, depth + 1);
}

inline double oracle_integral(const std::function<double(double)>& f, double a,
                              double b, double tol,
                              std::size_t panel_cap = std::size_t{1} << 20) {
  if (!(tol >= 1e-14))
    throw std::invalid_argument("oracle_integral: tol must be >= 1e-14");
  OracleState st{f, 1.0, 0, panel_cap};
  const double fa = oracle_eval(st, a);
  const double fb = oracle_eval(st, b);
  const double fm = oracle_eval(st, 0.5 * (a + b));
  const double whole = simpson_panel(a, b, fa, fm, fb);
  const double eps = tol * std::max(1.0, std::abs(whole));
  return oracle_recurse(st, a, b, fa, fm, fb, whole, eps, 0);
}

}  // namespace detail

/// Reference value of the integral of e over I: adaptive composite
/// Simpson with one Richardson extrapolation level per bisection,
/// accepted once the extrapolated correction drops below tol
/// (absolute-or-relative to the first whole-interval estimate).
inline double oracle_integral(const Expr& e, Interval I, double tol = 1e-12) {
  return detail::oracle_integral([&](double t) { return eval(e, t); }, I.a, I.b,
                                 tol);
}

/// Three-point Simpson mean [g(a) + g(b)]/6 + (2/3) g((a+b)/2).
inline double simpson_mean(const Expr& e, Interval I) {
  const double ga = eval(e, I.a), gb = eval(e, I.b), gm = eval(e, I.midpoint());
  return (ga + gb) / 6.0 + (2.0 / 3.0) * gm;
}

/// Classical Simpson estimate of the integral over I.
inline double simpson_estimate(const Expr& e, Interval I) {
  return I.width() * simpson_mean(e, I);
}

/// Simpson defect T_g(a,b): Simpson mean minus the true integral mean,
/// the integral term supplied by the reference oracle.
inline double t_functional(const Expr& e, Interval I, double tol = 1e-12) {
  return simpson_mean(e, I) - oracle_integral(e, I, tol) / I.width();
}

/// Midpoint defect of the second derivative, scaled to the correction
/// term of the fourth-order rule: (b-a)^2/360 [(g''(a)+g''(b))/2 - g''(m)].
inline double correction_term_mean(const Expr& e, Interval I) {
  const double d2a = eval_jet(e, I.a, 2).deriv(2);
  const double d2b = eval_jet(e, I.b, 2).deriv(2);
  const double d2m = eval_jet(e, I.midpoint(), 2).deriv(2);
  const double h = I.width();
  return h * h / 360.0 * (0.5 * (d2a + d2b) - d2m);
}

/// Corrected Simpson estimate of the integral over I; exact through
/// degree-5 polynomials.
inline double corrected_simpson(const Expr& e, Interval I) {
  return simpson_estimate(e, I) - I.width() * correction_term_mean(e, I);
}

/// Defect of the corrected rule, T_g minus the correction term.
inline double corrected_defect(const Expr& e, Interval I, double tol = 1e-12) {
  return t_functional(e, I, tol) - correction_term_mean(e, I);
}

/// T_g through the order-matching integral representation over [0,1]:
///   order 1:  (b-a)/12    int (1-3t)   [g'(u)   - g'(v)  ] dt
///   order 2:  (b-a)^2/48  int t(2-3t)  [g''(u)  + g''(v) ] dt
///   order 3:  (b-a)^3/96  int t^2(1-t) [g'''(u) - g'''(v)] dt
/// with u = b - t(b-a)/2 and v = a + t(b-a)/2. Must agree with
/// t_functional within combined oracle tolerances.
inline double t_via_representation(const Expr& e, Interval I, int order,
                                   double tol = 1e-10) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("t_via_representation: order must be 1, 2 or 3");
  const double a = I.a, b = I.b, w = I.width();
  const auto integrand = [&](double t) {
    const double u = b - 0.5 * t * w;
    const double v = a + 0.5 * t * w;
    const double du = eval_jet(e, u, order).deriv(order);
    const double dv = eval_jet(e, v, order).deriv(order);
    switch (order) {
      case 1: return (1.0 - 3.0 * t) * (du - dv);
      case 2: return t * (2.0 - 3.0 * t) * (du + dv);
      default: return t * t * (1.0 - t) * (du - dv);
    }
  };
  const double integral = detail::oracle_integral(integrand, 0.0, 1.0, tol);
  switch (order) {
    case 1: return w / 12.0 * integral;
    case 2: return w * w / 48.0 * integral;
    default: return w * w * w / 96.0 * integral;
  }
}

}  // namespace simpref
