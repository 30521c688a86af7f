#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simpref/bounds.hpp"
#include "simpref/composite.hpp"
#include "simpref/coth_bounds.hpp"
#include "simpref/expr.hpp"
#include "simpref/extremal.hpp"
#include "simpref/interval.hpp"
#include "simpref/ranges.hpp"
#include "simpref/simpson.hpp"

namespace simpref::verify {

/// One corpus function: expression text, the interval it is exercised
/// on, and closed-form derivative ranges (m_n, M_n) for n = 1..4 over
/// any sub-interval. The ranges are the analytic side of every
/// containment check, so each family is built from pieces whose
/// derivative extrema have closed forms.
struct CorpusEntry {
  std::string text;
  Expr expr;
  Interval domain;
  std::function<std::pair<double, double>(int, Interval)> range;
  bool fourth_nonneg;
};

namespace detail {

using simpref::detail::format_double;

inline std::pair<double, double> minmax2(double x, double y) {
  return x <= y ? std::pair{x, y} : std::pair{y, x};
}

inline std::pair<double, double> scale_range(double c, std::pair<double, double> r) {
  return c >= 0.0 ? std::pair{c * r.first, c * r.second}
                  : std::pair{c * r.second, c * r.first};
}

inline std::pair<double, double> shift_range(std::pair<double, double> r, double s) {
  return {r.first + s, r.second + s};
}

/// Range of sin over [lo, hi].
inline std::pair<double, double> sin_range(double lo, double hi) {
  const double pi = std::numbers::pi;
  auto [mn, mx] = minmax2(std::sin(lo), std::sin(hi));
  const double k_max = std::ceil((lo - 0.5 * pi) / (2.0 * pi));
  if (0.5 * pi + 2.0 * pi * k_max <= hi) mx = 1.0;
  const double k_min = std::ceil((lo + 0.5 * pi) / (2.0 * pi));
  if (-0.5 * pi + 2.0 * pi * k_min <= hi) mn = -1.0;
  return {mn, mx};
}

/// Range of cosh over [lo, hi].
inline std::pair<double, double> cosh_range(double lo, double hi) {
  const double big = std::max(std::abs(lo), std::abs(hi));
  const double small = lo <= 0.0 && hi >= 0.0 ? 0.0 : std::min(std::abs(lo), std::abs(hi));
  return {std::cosh(small), std::cosh(big)};
}

/// Range of c t^p over [a, b] for integer p >= 0.
inline std::pair<double, double> pow_range(double c, int p, double a, double b) {
  if (p == 0) return {c, c};
  const double pa = std::pow(a, p), pb = std::pow(b, p);
  if (p % 2 == 1) return scale_range(c, {pa, pb});
  const double m0 = a <= 0.0 && b >= 0.0 ? 0.0 : std::min(pa, pb);
  return scale_range(c, {m0, std::max(pa, pb)});
}

/// Range of c t^q over [a, b] with a > 0 (monotone for any real q).
inline std::pair<double, double> powmono_range(double c, double q, double a, double b) {
  return scale_range(c, minmax2(std::pow(a, q), std::pow(b, q)));
}

inline double falling(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x - static_cast<double>(i);
  return r;
}

inline std::string coef_prefix(double c) {
  return c == 1.0 ? std::string() : format_double(c) + "*";
}

inline std::string linear_arg(double w, double p) {
  std::string s = w == 1.0 ? "t" : format_double(w) + "*t";
  if (p > 0.0) s += "+" + format_double(p);
  if (p < 0.0) s += "-" + format_double(-p);
  return s;
}

inline CorpusEntry make_entry(std::string text, Interval dom,
                              std::function<std::pair<double, double>(int, Interval)> fn) {
  Expr e = parse(text);
  const bool nonneg4 = fn(4, dom).first >= 0.0;
  return CorpusEntry{std::move(text), std::move(e), dom, std::move(fn), nonneg4};
}

// c e^{kt} (+ b t): D^n = c k^n e^{kt} (+ b for n = 1), monotone.
inline CorpusEntry make_exp(double c, double k, Interval dom, double b = 0.0) {
  std::string text = coef_prefix(c) + "exp(" + linear_arg(k, 0.0) + ")";
  if (b != 0.0) text += "+" + coef_prefix(b) + "t";
  return make_entry(text, dom, [c, k, b](int n, Interval I) {
    const double cn = c * std::pow(k, n);
    auto r = minmax2(cn * std::exp(k * I.a), cn * std::exp(k * I.b));
    return n == 1 ? shift_range(r, b) : r;
  });
}

// c cosh(kt) + q t^2, k > 0, q >= 0.
inline CorpusEntry make_cosh(double c, double k, Interval dom, double q = 0.0) {
  std::string text = coef_prefix(c) + "cosh(" + linear_arg(k, 0.0) + ")";
  if (q != 0.0) text += "+" + coef_prefix(q) + "t^2";
  return make_entry(text, dom, [c, k, q](int n, Interval I) {
    const double cn = c * std::pow(k, n);
    auto r = n % 2 == 0 ? scale_range(cn, cosh_range(k * I.a, k * I.b))
                        : scale_range(cn, minmax2(std::sinh(k * I.a), std::sinh(k * I.b)));
    if (q == 0.0) return r;
    if (n == 1)  // c k sinh(kt) + 2 q t: sum of increasing terms
      return minmax2(c * k * std::sinh(k * I.a) + 2.0 * q * I.a,
                     c * k * std::sinh(k * I.b) + 2.0 * q * I.b);
    if (n == 2) return shift_range(r, 2.0 * q);
    return r;
  });
}

// c sinh(kt), k > 0.
inline CorpusEntry make_sinh(double c, double k, Interval dom) {
  return make_entry(coef_prefix(c) + "sinh(" + linear_arg(k, 0.0) + ")", dom,
                    [c, k](int n, Interval I) {
                      const double cn = c * std::pow(k, n);
                      return n % 2 == 1
                                 ? scale_range(cn, cosh_range(k * I.a, k * I.b))
                                 : scale_range(cn, minmax2(std::sinh(k * I.a),
                                                           std::sinh(k * I.b)));
                    });
}

// A sin(wt + p) (or cos via phase shift): D^n = A w^n sin(wt + p + n pi/2).
inline CorpusEntry make_trig(bool cosine, double A, double w, double p, Interval dom) {
  const std::string fn = cosine ? "cos" : "sin";
  const double phase0 = p + (cosine ? 0.5 * std::numbers::pi : 0.0);
  return make_entry(coef_prefix(A) + fn + "(" + linear_arg(w, p) + ")", dom,
                    [A, w, phase0](int n, Interval I) {
                      const double ph = phase0 + 0.5 * std::numbers::pi * n;
                      return scale_range(A * std::pow(w, n),
                                         sin_range(w * I.a + ph, w * I.b + ph));
                    });
}

// c t^k for integer k in 2..5.
inline CorpusEntry make_monomial(double c, int k, Interval dom) {
  return make_entry(coef_prefix(c) + "t^" + std::to_string(k), dom,
                    [c, k](int n, Interval I) {
                      if (n > k) return std::pair{0.0, 0.0};
                      return pow_range(c * falling(k, n), k - n, I.a, I.b);
                    });
}

// c t^q on a positive domain, q fractional.
inline CorpusEntry make_fracpow(double c, double q, Interval dom) {
  return make_entry(coef_prefix(c) + "t^" + format_double(q), dom,
                    [c, q](int n, Interval I) {
                      return powmono_range(c * falling(q, n), q - n, I.a, I.b);
                    });
}

// c log(t) on a positive domain: D^n = c (-1)^{n-1} (n-1)! t^{-n}.
inline CorpusEntry make_log(double c, Interval dom) {
  return make_entry(coef_prefix(c) + "log(t)", dom, [c](int n, Interval I) {
    const double coef = c * (n % 2 == 1 ? 1.0 : -1.0) * falling(n - 1, n - 1);
    return powmono_range(coef, -n, I.a, I.b);
  });
}

// c / t on a positive domain: D^n = c (-1)^n n! t^{-n-1}.
inline CorpusEntry make_recip(double c, Interval dom) {
  return make_entry(format_double(c) + "/t", dom, [c](int n, Interval I) {
    const double coef = c * (n % 2 == 0 ? 1.0 : -1.0) * falling(n, n);
    return powmono_range(coef, -n - 1, I.a, I.b);
  });
}

// sqrt(t) on a positive domain.
inline CorpusEntry make_sqrt(Interval dom) {
  return make_entry("sqrt(t)", dom, [](int n, Interval I) {
    return powmono_range(falling(0.5, n), 0.5 - n, I.a, I.b);
  });
}

// q0 + q1 t + q2 t^2 + q3 t^3.
inline CorpusEntry make_poly(double q0, double q1, double q2, double q3, Interval dom) {
  std::string text = format_double(q0);
  const auto add_term = [&text](double c, const std::string& mono) {
    if (c == 0.0) return;
    text += c > 0.0 ? "+" : "-";
    const double a = std::abs(c);
    text += (a == 1.0 ? "" : format_double(a) + "*") + mono;
  };
  add_term(q1, "t");
  add_term(q2, "t^2");
  add_term(q3, "t^3");
  return make_entry(text, dom, [q1, q2, q3](int n, Interval I) {
    switch (n) {
      case 1: {  // q1 + 2 q2 t + 3 q3 t^2
        if (q3 == 0.0)
          return shift_range(pow_range(2.0 * q2, 1, I.a, I.b), q1);
        // quadratic derivative: extrema at endpoints or the vertex
        const auto d1 = [&](double t) { return q1 + 2.0 * q2 * t + 3.0 * q3 * t * t; };
        auto r = minmax2(d1(I.a), d1(I.b));
        const double v = -q2 / (3.0 * q3);
        if (I.contains(v)) {
          r.first = std::min(r.first, d1(v));
          r.second = std::max(r.second, d1(v));
        }
        return r;
      }
      case 2: return shift_range(pow_range(6.0 * q3, 1, I.a, I.b), 2.0 * q2);
      case 3: return std::pair{6.0 * q3, 6.0 * q3};
      default: return std::pair{0.0, 0.0};
    }
  });
}

}  // namespace detail

/// The fixed 50-function smooth corpus with analytic derivative ranges.
inline const std::vector<CorpusEntry>& corpus() {
  using namespace detail;
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    // exponentials
    v.push_back(make_exp(1.0, 1.0, Interval(0.0, 1.0)));
    v.push_back(make_exp(1.0, 0.7, Interval(-1.5, 1.2)));
    v.push_back(make_exp(1.3, -0.8, Interval(-1.0, 2.0)));
    v.push_back(make_exp(0.5, 1.6, Interval(-0.5, 1.0)));
    v.push_back(make_exp(1.0, -1.2, Interval(-0.8, 1.4)));
    v.push_back(make_exp(2.0, 0.4, Interval(-2.0, 0.5)));
    v.push_back(make_exp(0.8, 1.1, Interval(-1.0, 1.0), 0.6));
    v.push_back(make_exp(1.5, -0.6, Interval(-1.2, 1.5), 1.2));
    // hyperbolics
    v.push_back(make_cosh(1.0, 1.0, Interval(-2.0, 2.0)));
    v.push_back(make_cosh(1.0, 1.3, Interval(-1.0, 1.5)));
    v.push_back(make_cosh(0.7, 0.9, Interval(0.2, 2.2)));
    v.push_back(make_cosh(1.0, 0.7, Interval(-1.5, 1.0), 0.4));
    v.push_back(make_sinh(1.0, 1.0, Interval(-1.5, 1.5)));
    v.push_back(make_sinh(1.0, 0.8, Interval(-0.5, 2.0)));
    v.push_back(make_sinh(1.2, 1.1, Interval(0.1, 1.8)));
    // trig
    v.push_back(make_trig(false, 1.0, 1.0, 0.0, Interval(0.2, 2.9)));
    v.push_back(make_trig(false, 1.0, 1.7, 0.3, Interval(-1.0, 1.0)));
    v.push_back(make_trig(false, 2.0, 0.9, 1.1, Interval(-2.0, 1.0)));
    v.push_back(make_trig(false, 0.6, 2.2, 0.0, Interval(-0.7, 1.3)));
    v.push_back(make_trig(false, 1.0, 1.3, 2.0, Interval(0.0, 2.4)));
    v.push_back(make_trig(false, 1.0, 0.5, 0.9, Interval(-2.5, 1.5)));
    v.push_back(make_trig(false, 0.4, 2.6, 1.9, Interval(0.3, 1.4)));
    v.push_back(make_trig(true, 1.0, 1.0, 0.0, Interval(-1.2, 1.8)));
    v.push_back(make_trig(true, 1.0, 1.5, 0.5, Interval(-1.5, 0.9)));
    v.push_back(make_trig(true, 1.4, 0.8, 2.1, Interval(-0.6, 2.2)));
    v.push_back(make_trig(true, 0.9, 2.0, 0.7, Interval(0.1, 1.6)));
    v.push_back(make_trig(true, 1.8, 1.1, 0.0, Interval(-1.8, 0.4)));
    // monomials
    v.push_back(make_monomial(1.0, 2, Interval(-1.0, 2.0)));
    v.push_back(make_monomial(1.0, 3, Interval(-1.5, 1.0)));
    v.push_back(make_monomial(1.0, 4, Interval(-1.0, 1.3)));
    v.push_back(make_monomial(1.0, 5, Interval(-1.2, 0.9)));
    v.push_back(make_monomial(0.3, 4, Interval(0.2, 1.8)));
    v.push_back(make_monomial(2.0, 3, Interval(0.5, 2.0)));
    v.push_back(make_monomial(0.7, 5, Interval(0.1, 1.5)));
    v.push_back(make_monomial(1.0, 4, Interval(0.0, 1.0)));
    // logs, reciprocals, roots
    v.push_back(make_log(1.0, Interval(0.4, 2.6)));
    v.push_back(make_log(1.0, Interval(1.0, 3.2)));
    v.push_back(make_log(2.0, Interval(0.3, 1.9)));
    v.push_back(make_recip(1.0, Interval(0.5, 2.4)));
    v.push_back(make_recip(1.0, Interval(0.8, 3.0)));
    v.push_back(make_recip(0.6, Interval(0.4, 1.7)));
    v.push_back(make_sqrt(Interval(0.3, 2.1)));
    v.push_back(make_sqrt(Interval(0.9, 3.5)));
    v.push_back(make_fracpow(1.0, 2.5, Interval(0.2, 1.9)));
    v.push_back(make_fracpow(1.3, 3.5, Interval(0.3, 1.6)));
    // low-degree polynomials
    v.push_back(make_poly(1.0, 0.5, 0.8, 0.0, Interval(-1.5, 1.2)));
    v.push_back(make_poly(2.0, -1.3, 0.4, 0.0, Interval(-0.5, 2.5)));
    v.push_back(make_poly(0.2, 1.0, -0.6, 0.0, Interval(-2.0, 1.0)));
    v.push_back(make_poly(0.0, -2.0, 1.0, 0.0, Interval(0.0, 3.0)));
    v.push_back(make_poly(0.0, -1.0, 0.0, 0.5, Interval(-1.0, 2.0)));
    return v;
  }();
  return entries;
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

/// Outcome of one property: pass iff slack >= 0, where slack is the
/// property's tolerance minus the worst measured violation (so healthy
/// margins show up as positive slack).
struct PropertyResult {
  std::string name;
  bool pass;
  double slack;
};

enum class Suite { Representations, Bounds, Sharpness, Coth, All };

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Representations: return "representations";
    case Suite::Bounds: return "bounds";
    case Suite::Sharpness: return "sharpness";
    case Suite::Coth: return "coth";
    case Suite::All: return "all";
  }
  return "?";
}

inline std::optional<Suite> suite_from_name(std::string_view s) {
  for (Suite x : {Suite::Representations, Suite::Bounds, Suite::Sharpness,
                  Suite::Coth, Suite::All})
    if (s == suite_name(x)) return x;
  return std::nullopt;
}

namespace detail {

using simpref::detail::splitmix64;
using simpref::detail::uniform01;

/// Tracks the worst (largest) violation across instances of a property.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  void update(double bad) { value = std::max(value, bad); }
  PropertyResult finish(std::string name, double tol) const {
    const double slack = tol - value;
    return PropertyResult{std::move(name), slack >= 0.0, slack};
  }
};

inline Interval random_subinterval(Interval dom, std::uint64_t& rng) {
  const double w = dom.width() * (0.3 + 0.6 * uniform01(rng));
  const double off = (dom.width() - w) * uniform01(rng);
  return Interval(dom.a + off, dom.a + off + w);
}

inline std::vector<PropertyResult> suite_representations(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto& entries = corpus();

  for (int order = 1; order <= 3; ++order) {
    Worst w;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::uint64_t rng = seed ^ (0x9E3779B97F4A7C15ull * (i + 101 * order));
      for (int k = 0; k < 3; ++k) {
        const Interval I = random_subinterval(entries[i].domain, rng);
        const double t = t_functional(entries[i].expr, I);
        const double r = t_via_representation(entries[i].expr, I, order);
        w.update(std::abs(r - t) / (1.0 + std::abs(t)));
      }
    }
    out.push_back(w.finish("rep-identity-order-" + std::to_string(order), 1e-8));
  }

  {  // Simpson is exact on cubics
    Worst w;
    std::uint64_t rng = seed ^ 0xC0FFEEull;
    for (int k = 0; k < 30; ++k) {
      const double c0 = -10.0 + 20.0 * uniform01(rng);
      const double c1 = -10.0 + 20.0 * uniform01(rng);
      const double c2 = -10.0 + 20.0 * uniform01(rng);
      const double c3 = -10.0 + 20.0 * uniform01(rng);
      const double a = -5.0 + 10.0 * uniform01(rng);
      const double b = a + 0.2 + 9.8 * uniform01(rng);
      const Expr e = parse(
          simpref::detail::format_double(c0) + "+" +
          simpref::detail::format_double(c1) + "*t+" +
          simpref::detail::format_double(c2) + "*t^2+" +
          simpref::detail::format_double(c3) + "*t^3");
      const Interval I(a, b);
      const double scale = 1.0 + std::abs(eval(e, I.a)) + std::abs(eval(e, I.b)) +
                           std::abs(eval(e, I.midpoint()));
      w.update(std::abs(t_functional(e, I)) / scale);
    }
    out.push_back(w.finish("cubic-exactness", 1e-12));
  }

  {  // T is translation invariant
    Worst w;
    std::uint64_t rng = seed ^ 0xABCDEFull;
    for (std::size_t i = 0; i < entries.size(); i += 4) {
      const double c = -2.0 + 4.0 * uniform01(rng);
      const Interval I = entries[i].domain;
      const Expr shifted = substitute_var(
          entries[i].expr, Expr::sub(Expr::var(), Expr::number(c)));
      const double t0 = t_functional(entries[i].expr, I);
      const double t1 = t_functional(shifted, Interval(I.a + c, I.b + c));
      w.update(std::abs(t1 - t0) / (1.0 + std::abs(t0)));
    }
    out.push_back(w.finish("translation-invariance", 1e-10));
  }

  {  // T_{t^4}(0, h) = h^4/120 across scales
    Worst w;
    const Expr e = parse("t^4");
    for (int k = -4; k <= 4; ++k) {
      const double h = std::pow(2.0, k);
      const double expect = h * h * h * h / 120.0;
      w.update(std::abs(t_functional(e, Interval(0.0, h)) - expect) / expect);
    }
    out.push_back(w.finish("scaling-law-quartic", 1e-12));
  }

  {  // the corrected rule annihilates every polynomial through degree 5
    Worst w;
    std::uint64_t rng = seed ^ 0x5EEDull;
    for (int k = 0; k < 20; ++k) {
      std::string text = simpref::detail::format_double(-5.0 + 10.0 * uniform01(rng));
      for (int d = 1; d <= 5; ++d)
        text += "+" + simpref::detail::format_double(-5.0 + 10.0 * uniform01(rng)) +
                "*t^" + std::to_string(d);
      const double a = -3.0 + 6.0 * uniform01(rng);
      const Interval I(a, a + 0.3 + 3.0 * uniform01(rng));
      const Expr e = parse(text);
      const double t = t_functional(e, I);
      const double c = correction_term_mean(e, I);
      w.update(std::abs(t - c) / (1.0 + std::abs(t) + std::abs(c)));
    }
    out.push_back(w.finish("corrected-rule-annihilation-deg5", 1e-12));
  }

  return out;
}

inline std::vector<PropertyResult> suite_bounds(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto& entries = corpus();

  // per-entry defect and analytic ranges over the whole domain
  std::vector<double> T(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    T[i] = t_functional(entries[i].expr, entries[i].domain);

  const auto exact = [&](std::size_t i, int n) {
    const auto [m, M] = entries[i].range(n, entries[i].domain);
    return exact_range(n, entries[i].domain, m, M);
  };

  {
    Worst w0, w1, w7, w2, w4;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Interval I = entries[i].domain;
      const double scale = 1.0 + std::abs(T[i]);
      const auto margin = [&](const Enclosure& enc) {
        return std::max(enc.lower - T[i], T[i] - enc.upper) / scale;
      };
      w0.update(margin(bound_c1(I, exact(i, 1))));
      w1.update(margin(bound_c2(I, exact(i, 2))));
      w7.update(margin(bound_c2_coarse(I, exact(i, 2))));
      w2.update(margin(bound_c3(I, exact(i, 3))));
      w4.update(margin(c4_enclosure(I, exact(i, 4))));
    }
    out.push_back(w0.finish("containment-thm0", 1e-10));
    out.push_back(w1.finish("containment-thm1", 1e-10));
    out.push_back(w7.finish("containment-eq7", 1e-10));
    out.push_back(w2.finish("containment-thm2", 1e-10));
    out.push_back(w4.finish("containment-eq4", 1e-10));
  }

  {  // convex second derivative: 0 <= T <= THM3 upper, THM4 disc holds
    Worst lo3, hi3, w4;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!entries[i].fourth_nonneg) continue;
      const Interval I = entries[i].domain;
      const double scale = 1.0 + std::abs(T[i]);
      const Enclosure e3 = bound_convex2(entries[i].expr, I);
      lo3.update(-T[i] / scale);
      hi3.update((T[i] - e3.upper) / scale);
      const Enclosure e4 = thm4_t_enclosure(entries[i].expr, I, exact(i, 4));
      w4.update(std::max(e4.lower - T[i], T[i] - e4.upper) / scale);
    }
    out.push_back(lo3.finish("thm3-lower-side", 1e-10));
    out.push_back(hi3.finish("thm3-upper-side", 1e-10));
    out.push_back(w4.finish("containment-thm4", 1e-10));
  }

  {  // sampled ranges land inside (and near) the analytic ones
    Worst inside, close;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (int n = 1; n <= 4; ++n) {
        const auto [m, M] = entries[i].range(n, entries[i].domain);
        const DerivativeRange s =
            estimate_derivative_range(entries[i].expr, entries[i].domain, n);
        const double scale = 1.0 + std::max(std::abs(m), std::abs(M));
        inside.update(std::max(m - s.m, s.M - M) / scale);
        close.update(std::max(s.m - m, M - s.M) / scale);
      }
    }
    out.push_back(inside.finish("sampled-range-validity", 1e-9));
    out.push_back(close.finish("sampled-range-sharpness", 1e-6));
  }

  {  // EQ7 and THM1 widths sit in the exact 162/36 ratio
    Worst w;
    for (std::size_t i = 0; i < entries.size(); i += 7) {
      const Interval I = entries[i].domain;
      const Enclosure coarse = bound_c2_coarse(I, exact(i, 2));
      const Enclosure fine = bound_c2(I, exact(i, 2));
      if (fine.width() == 0.0) continue;
      w.update(std::abs(coarse.width() / fine.width() - 4.5));
    }
    out.push_back(w.finish("eq7-thm1-width-ratio", 1e-13));
  }

  {  // refined HH bracket collapses when m2 = M2
    const Expr e = parse("t^2");
    const Interval I(0.0, 1.0);
    const Enclosure enc = hh_refined_enclosure(e, I, exact_range(2, I, 2.0, 2.0));
    Worst w;
    w.update(enc.width());
    out.push_back(w.finish("hh-refined-collapse", 1e-12));
  }

  {  // refined HH beats plain HH for exp on [0,1] and contains e - 1
    const Expr e = parse("exp(t)");
    const Interval I(0.0, 1.0);
    const Enclosure plain = hh_enclosure(e, I, Convexity::Convex);
    const Enclosure refined =
        hh_refined_enclosure(e, I, exact_range(2, I, 1.0, std::numbers::e));
    const double mean = std::numbers::e - 1.0;
    Worst w;
    w.update(refined.width() / plain.width() - 1.0);
    w.update(refined.lower - mean);
    w.update(mean - refined.upper);
    w.update(plain.lower - mean);
    w.update(mean - plain.upper);
    out.push_back(w.finish("hh-refinement-exp", 0.0));
  }

  {  // best_bound is never wider than any applicable bound
    Worst w;
    std::uint64_t rng = seed ^ 0xB0B0ull;
    for (std::size_t i = 0; i < entries.size(); i += 11) {
      const Interval I = random_subinterval(entries[i].domain, rng);
      const RangeOptions opt{257, 1.05, std::nullopt};
      const auto all = all_bounds(entries[i].expr, I, SmoothnessClass::C4, opt);
      const Enclosure best = best_bound(entries[i].expr, I, SmoothnessClass::C4, opt);
      for (const Enclosure& cand : all) w.update(best.width() - cand.width());
    }
    out.push_back(w.finish("best-bound-minimal", 0.0));
  }

  return out;
}

inline std::vector<PropertyResult> suite_sharpness(std::uint64_t seed) {
  std::vector<PropertyResult> out;

  {  // the d witness is C^3 across its knots
    Worst w;
    const auto left = [](double x, int n) {
      switch (n) {
        case 0: return -x * x * x / 6.0 - x / 3.0;
        case 1: return -x * x / 2.0 - 1.0 / 3.0;
        case 2: return -x;
        default: return -1.0;
      }
    };
    const auto mid = [](double x, int n) {
      switch (n) {
        case 0: return x * x * x * x / 24.0 + x * x / 4.0 - x / 6.0 + 1.0 / 24.0;
        case 1: return x * x * x / 6.0 + x / 2.0 - 1.0 / 6.0;
        case 2: return x * x / 2.0 + 0.5;
        default: return x;
      }
    };
    const auto right = [](double x, int n) {
      switch (n) {
        case 0: return x * x * x / 6.0;
        case 1: return x * x / 2.0;
        case 2: return x;
        default: return 1.0;
      }
    };
    for (int n = 0; n <= 3; ++n) {
      w.update(std::abs(left(-1.0, n) - mid(-1.0, n)));
      w.update(std::abs(right(1.0, n) - mid(1.0, n)));
    }
    out.push_back(w.finish("d-witness-knot-continuity", 1e-12));
  }

  {  // closed-form ratio formula
    Worst w;
    for (double a : {2.0, 10.0, 100.0}) {
      const double got = sharpness_ratio(WitnessTag::DFunction, a);
      const double a2 = a * a;
      const double expect = 1.0 / 1152.0 *
                            std::abs(1.0 - 2.0 / a2 + 2.0 / (a2 * a) -
                                     3.0 / (5.0 * a2 * a2));
      w.update(std::abs(got - expect) / expect);
    }
    out.push_back(w.finish("d-ratio-closed-form", 1e-10));
  }

  {  // ratio approaches 1/1152 from below
    const double r = sharpness_ratio(WitnessTag::DFunction, 1000.0);
    Worst w;
    w.update(1.0 / 1152.0 * (1.0 - 3e-6) - r);
    w.update(r - 1.0 / 1152.0);
    out.push_back(w.finish("d-ratio-limit-1e3", 0.0));
  }

  {  // oracle-computed T reproduces the closed form
    Worst w;
    for (double a : {2.0, 10.0}) {
      const double got = sharpness_ratio_numeric(WitnessTag::DFunction, a);
      const double expect = sharpness_ratio(WitnessTag::DFunction, a);
      w.update(std::abs(got - expect) / expect);
    }
    out.push_back(w.finish("d-ratio-numeric-oracle", 1e-10));
  }

  {  // abs-cubic witness achieves exactly 1/288; x4 meets EQ4 exactly
    Worst w;
    for (double a : {0.5, 1.0, 3.7}) {
      w.update(std::abs(sharpness_ratio(WitnessTag::AbsCubic, a) * 288.0 - 1.0));
      w.update(std::abs(sharpness_ratio(WitnessTag::X4, a) - 1.0));
    }
    out.push_back(w.finish("witness-exact-ratios", 1e-13));
  }

  {  // closed-form witness integrals match the oracle
    Worst w;
    for (double a : {1.7, 2.5}) {
      for (WitnessTag tag : {WitnessTag::AbsCubic, WitnessTag::DFunction,
                             WitnessTag::X4, WitnessTag::X5}) {
        const double analytic = witness_integral_symmetric(tag, a);
        const double numeric = simpref::detail::oracle_integral(
            [tag](double x) { return witness_eval(tag, x, 0); }, -a, a, 1e-12);
        w.update(std::abs(analytic - numeric) / (1.0 + std::abs(analytic)));
      }
    }
    out.push_back(w.finish("witness-double-entry-integrals", 1e-10));
  }

  {  // search stays inside the known bracket and never beats 1/162
    const SearchReport rep = constant_search(SearchClass::C2, seed, 64);
    Worst w;
    w.update(1.0 / 288.0 - 1e-12 - rep.best_ratio);
    w.update(rep.best_ratio - (1.0 / 162.0 + 1e-10));
    out.push_back(w.finish("search-c2-bracket", 0.0));
  }

  {  // C1 search stays under 5/72
    const SearchReport rep = constant_search(SearchClass::C1, seed, 64);
    Worst w;
    w.update(rep.best_ratio - (5.0 / 72.0 + 1e-10));
    w.update(-rep.best_ratio);
    out.push_back(w.finish("search-c1-upper", 0.0));
  }

  {  // same seed, same report
    const SearchReport r1 = constant_search(SearchClass::C2, seed, 32);
    const SearchReport r2 = constant_search(SearchClass::C2, seed, 32);
    Worst w;
    w.update(r1.best_ratio == r2.best_ratio &&
                     r1.candidate_description == r2.candidate_description
                 ? 0.0
                 : 1.0);
    out.push_back(w.finish("search-determinism", 0.0));
  }

  return out;
}

inline std::vector<PropertyResult> suite_coth(std::uint64_t /*seed*/) {
  std::vector<PropertyResult> out;

  {  // pointwise bracket on a log grid
    Worst w;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
      const double t = std::pow(10.0, -3.0 + 4.0 * static_cast<double>(i) /
                                           static_cast<double>(n - 1));
      const auto [lo, hi] = eq11_pointwise(t);
      const double mid = coth_scalar(t) / t;
      w.update(std::max(lo - mid, mid - hi));
    }
    out.push_back(w.finish("eq11-pointwise-grid", 1e-12));
  }

  const Expr cexpr = parse("coth(t)/t");
  const auto mean = [&](double y, double x) {
    return oracle_integral(cexpr, Interval(y, x), 1e-12) / (x - y);
  };
  const double pairs[3][2] = {{0.5, 1.0}, {1.0, 2.0}, {0.1, 0.2}};

  {
    Worst w5, w6;
    for (const auto& p : pairs) {
      const double m = mean(p[0], p[1]);
      const double scale = 1.0 + std::abs(m);
      const CothBounds b5 = coth_mean_bounds(p[0], p[1]);
      w5.update(std::max(b5.lower - m, m - b5.upper) / scale);
      const CothBounds b6 = coth_mean_corrected(p[0], p[1]);
      w6.update((std::abs(*b6.corrected - m) - *b6.corrected_radius) / scale);
    }
    out.push_back(w5.finish("thm5-mean-containment", 1e-12));
    out.push_back(w6.finish("thm6-disc-containment", 1e-12));
  }

  {  // integrating the pointwise bounds reproduces the mean bounds
    Worst w;
    for (const auto& p : pairs) {
      if (p[1] - p[0] > 1.5) continue;
      const CothBounds b5 = coth_mean_bounds(p[0], p[1]);
      const double up = simpref::detail::oracle_integral(
                            [](double t) {
                              const double c = coth_scalar(t);
                              return c * c - 1.0 / 3.0;
                            },
                            p[0], p[1], 1e-12) /
                        (p[1] - p[0]);
      const double lo = simpref::detail::oracle_integral(
                            [](double t) {
                              const double c = coth_scalar(t);
                              return c * c - 1.0 / 3.0 - 16.0 / 81.0 * t * t;
                            },
                            p[0], p[1], 1e-12) /
                        (p[1] - p[0]);
      w.update(std::abs(up - b5.upper) / (1.0 + std::abs(b5.upper)));
      w.update(std::abs(lo - b5.lower) / (1.0 + std::abs(b5.lower)));
    }
    out.push_back(w.finish("eq11-integrated-consistency", 1e-10));
  }

  {  // the fourth-order disc is tighter than the thm5 gap on short,
     // low-argument spans (the disc diameter grows like x^4, the gap
     // like x^2, so the advantage is confined to x <= 1)
    Worst w;
    for (double y : {0.05, 0.2, 0.5, 0.9}) {
      const double x = y + 0.1;
      const CothBounds b6 = coth_mean_corrected(y, x);
      const double gap = 16.0 / 243.0 * (x * x + x * y + y * y);
      w.update((2.0 * *b6.corrected_radius - gap) / gap);
    }
    out.push_back(w.finish("thm6-width-advantage", 0.0));
  }

  {  // shrinking interval: the thm5 bracket converges to the pointwise
     // eq11 bracket at the center and keeps containing the mean there
    const CothBounds b = coth_mean_bounds(0.999999, 1.000001);
    const auto [lo1, hi1] = eq11_pointwise(1.0);
    const double c1 = coth_scalar(1.0);
    Worst w;
    w.update(std::abs(b.upper - hi1));
    w.update(std::abs(b.lower - lo1));
    w.update(b.lower - c1);
    w.update(c1 - b.upper);
    out.push_back(w.finish("thm5-shrinking-interval-limit", 1e-4));
  }

  return out;
}

}  // namespace detail

inline std::vector<PropertyResult> run_suite(Suite s, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto append = [&out](std::vector<PropertyResult> v) {
    for (auto& p : v) out.push_back(std::move(p));
  };
  if (s == Suite::Representations || s == Suite::All)
    append(detail::suite_representations(seed));
  if (s == Suite::Bounds || s == Suite::All) append(detail::suite_bounds(seed));
  if (s == Suite::Sharpness || s == Suite::All)
    append(detail::suite_sharpness(seed));
  if (s == Suite::Coth || s == Suite::All) append(detail::suite_coth(seed));
  return out;
}

}  // namespace simpref::verify
