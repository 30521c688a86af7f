#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "simpref/bounds.hpp"
#include "simpref/expr.hpp"
#include "simpref/interval.hpp"
#include "simpref/parallel.hpp"
#include "simpref/simpson.hpp"

namespace simpref {

enum class Rule { Classical, Corrected, Oracle };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Classical: return "classical";
    case Rule::Corrected: return "corrected";
    case Rule::Oracle: return "oracle";
  }
  return "?";
}

/// Integral estimate plus (when a bound theorem applies) a certified
/// enclosure of the true integral. The enclosure brackets the integral,
/// not the estimate, so it need not contain `estimate`.
struct QuadratureResult {
  double estimate;
  std::optional<Enclosure> enclosure;
  Rule rule;
  std::size_t panels;
};

struct PanelRecord {
  double left;
  double right;
  double estimate;            // rule estimate of the panel integral
  Enclosure defect;           // enclosure of the panel's T_g
  Enclosure integral;         // enclosure of the panel's integral
  double integral_width;      // width * defect width, free of the
                              // cancellation noise of upper - lower
};

struct Partition {
  std::vector<double> breakpoints;  // strictly increasing, first = a, last = b
  std::vector<PanelRecord> panels;
};

struct CompositeResult {
  QuadratureResult result;
  Partition partition;
  double defect_width_total;    // sum of per-panel defect-enclosure widths
  double integral_width_total;  // sum of per-panel integral-enclosure widths
  bool converged;               // adaptive: total width met tol before the cap
  std::size_t bisections;       // adaptive iterations performed
  std::vector<double> width_history;  // adaptive: total width after each bisection
};

struct CompositeOptions {
  std::size_t samples = 1025;      // per-panel range sampling grid
  double inflation = 1.05;
  bool per_panel_ranges = true;    // false: reuse `global_range` (or one
                                   // estimate over the whole interval)
  std::optional<DerivativeRange> global_range;
  std::size_t panel_cap = std::size_t{1} << 16;
};

namespace detail {

inline void require_integrable_rule(Rule rule, SmoothnessClass cls) {
  if (rule == Rule::Oracle)
    throw std::invalid_argument("composite integration drives classical/corrected rules only");
  if (rule == Rule::Corrected && smoothness_order(cls) < 4)
    throw std::invalid_argument("corrected rule requires smoothness class c4 or c4-convex2");
}

/// Defect enclosure for one panel under the rule/class pair.
inline Enclosure panel_defect(const Expr& e, Interval P, Rule rule,
                              SmoothnessClass cls,
                              const std::optional<DerivativeRange>& fixed,
                              const CompositeOptions& opt) {
  if (rule == Rule::Classical && cls == SmoothnessClass::C4Convex2)
    return bound_convex2(e, P);
  const int order = smoothness_order(cls);
  const DerivativeRange r =
      fixed ? *fixed : estimate_derivative_range(e, P, order, opt.samples);
  if (rule == Rule::Corrected) return thm4_t_enclosure(e, P, r, opt.inflation);
  switch (cls) {
    case SmoothnessClass::C1: return bound_c1(P, r, opt.inflation);
    case SmoothnessClass::C2: return bound_c2(P, r, opt.inflation);
    case SmoothnessClass::C3: return bound_c3(P, r, opt.inflation);
    default: return c4_enclosure(P, r, opt.inflation);
  }
}

/// Integral of the panel equals width * (Simpson mean - T), so the
/// defect bracket flips sign when converted.
inline PanelRecord make_panel(const Expr& e, double a, double b, Rule rule,
                              SmoothnessClass cls,
                              const std::optional<DerivativeRange>& fixed,
                              const CompositeOptions& opt) {
  const Interval P(a, b);
  const Enclosure defect = panel_defect(e, P, rule, cls, fixed, opt);
  const double w = P.width();
  const double smean = simpson_mean(e, P);
  const Enclosure integral{w * smean - w * defect.upper,
                           w * smean - w * defect.lower, defect.theorem,
                           defect.constant, defect.confidence};
  const double estimate =
      rule == Rule::Corrected ? corrected_simpson(e, P) : w * smean;
  return PanelRecord{a, b, estimate, defect, integral, w * defect.width()};
}

inline std::optional<DerivativeRange> fixed_range(const Expr& e, Interval I,
                                                  Rule rule, SmoothnessClass cls,
                                                  const CompositeOptions& opt) {
  if (opt.per_panel_ranges && !opt.global_range) return std::nullopt;
  if (opt.global_range) {
    if (!(rule == Rule::Classical && cls == SmoothnessClass::C4Convex2) &&
        opt.global_range->order != smoothness_order(cls))
      throw std::invalid_argument("global range order does not match the smoothness class");
    return opt.global_range;
  }
  return estimate_derivative_range(e, I, smoothness_order(cls), opt.samples);
}

inline CompositeResult assemble(std::vector<PanelRecord> panels, Rule rule,
                                bool converged, std::size_t bisections) {
  std::sort(panels.begin(), panels.end(),
            [](const PanelRecord& x, const PanelRecord& y) { return x.left < y.left; });
  std::vector<double> est, lo, hi, dw, iw;
  est.reserve(panels.size());
  for (const PanelRecord& p : panels) {
    est.push_back(p.estimate);
    lo.push_back(p.integral.lower);
    hi.push_back(p.integral.upper);
    dw.push_back(p.defect.width());
    iw.push_back(p.integral_width);
  }
  Confidence conf = Confidence::AnalyticRange;
  for (const PanelRecord& p : panels)
    if (p.integral.confidence == Confidence::SampledRange)
      conf = Confidence::SampledRange;
  const Theorem thm = panels.front().integral.theorem;
  const Enclosure total{compensated_sum(lo.begin(), lo.end()),
                        compensated_sum(hi.begin(), hi.end()), thm,
                        theorem_constant(thm), conf};
  Partition part;
  part.breakpoints.reserve(panels.size() + 1);
  for (const PanelRecord& p : panels) part.breakpoints.push_back(p.left);
  part.breakpoints.push_back(panels.back().right);
  const double estimate = compensated_sum(est.begin(), est.end());
  const double defect_total = compensated_sum(dw.begin(), dw.end());
  const double integral_total = compensated_sum(iw.begin(), iw.end());
  const std::size_t n = panels.size();
  part.panels = std::move(panels);
  return CompositeResult{QuadratureResult{estimate, total, rule, n},
                         std::move(part), defect_total, integral_total,
                         converged, bisections, {}};
}

}  // namespace detail

/// Uniform N-panel application of the rule, each panel certified by the
/// class's bound theorem; the total enclosure is the interval sum over
/// panels in left-to-right order with compensated summation.
inline CompositeResult composite_integrate(const Expr& e, Interval I,
                                           std::size_t n_panels, Rule rule,
                                           SmoothnessClass cls,
                                           const CompositeOptions& opt = {}) {
  detail::require_integrable_rule(rule, cls);
  if (n_panels < 1)
    throw std::invalid_argument("composite_integrate: n_panels must be >= 1");
  const auto fixed = detail::fixed_range(e, I, rule, cls, opt);
  const double w = I.width();
  std::vector<PanelRecord> panels;
  panels.reserve(n_panels);
  for (std::size_t i = 0; i < n_panels; ++i) {
    const double left = i == 0 ? I.a : I.a + static_cast<double>(i) * w /
                                                 static_cast<double>(n_panels);
    const double right = i + 1 == n_panels
                             ? I.b
                             : I.a + static_cast<double>(i + 1) * w /
                                         static_cast<double>(n_panels);
    panels.push_back(detail::make_panel(e, left, right, rule, cls, fixed, opt));
  }
  return detail::assemble(std::move(panels), rule, true, 0);
}

/// Bisects the panel with the widest integral enclosure (ties: leftmost)
/// until the summed enclosure width reaches tol or the panel cap is hit;
/// a cap hit returns the partial result flagged not-converged.
inline CompositeResult adaptive_integrate(const Expr& e, Interval I, double tol,
                                          Rule rule, SmoothnessClass cls,
                                          const CompositeOptions& opt = {}) {
  detail::require_integrable_rule(rule, cls);
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_integrate: tol must be > 0");
  const auto fixed = detail::fixed_range(e, I, rule, cls, opt);

  struct Entry {
    double width;
    double left;
    std::size_t id;
  };
  const auto worse = [](const Entry& x, const Entry& y) {
    if (x.width != y.width) return x.width < y.width;
    return x.left > y.left;  // leftmost wins ties
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  std::vector<PanelRecord> records;
  std::vector<bool> active;
  const auto add_panel = [&](double a, double b) {
    records.push_back(detail::make_panel(e, a, b, rule, cls, fixed, opt));
    active.push_back(true);
    const PanelRecord& p = records.back();
    queue.push(Entry{p.integral_width, p.left, records.size() - 1});
    return p.integral_width;
  };

  double total = add_panel(I.a, I.b);
  std::size_t n_active = 1;
  std::size_t bisections = 0;
  std::vector<double> history;
  while (total > tol && !queue.empty()) {
    if (n_active >= opt.panel_cap) break;
    const Entry top = queue.top();
    queue.pop();
    if (!active[top.id]) continue;
    if (top.width <= 0.0) break;  // nothing left to improve
    const double a = records[top.id].left, b = records[top.id].right;
    const double mid = 0.5 * (a + b);
    if (!(a < mid && mid < b)) break;  // panel no longer splittable
    active[top.id] = false;
    total -= top.width;
    total += add_panel(a, mid);
    total += add_panel(mid, b);
    n_active += 1;
    bisections += 1;
    history.push_back(total);
  }

  std::vector<PanelRecord> alive;
  alive.reserve(n_active);
  for (std::size_t i = 0; i < records.size(); ++i)
    if (active[i]) alive.push_back(records[i]);
  CompositeResult res = detail::assemble(std::move(alive), rule, true, bisections);
  res.converged = res.integral_width_total <= tol;
  res.width_history = std::move(history);
  return res;
}

}  // namespace simpref
