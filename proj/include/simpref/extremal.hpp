#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "simpref/interval.hpp"
#include "simpref/simpson.hpp"

namespace simpref {

/// Hand-coded sharpness witnesses. Closed forms, no jet machinery:
/// two of them live exactly at the edge of their smoothness class,
/// where the expression evaluator would (rightly) refuse derivatives.
enum class WitnessTag { AbsCubic, DFunction, X4, X5 };

inline const char* witness_name(WitnessTag w) {
  switch (w) {
    case WitnessTag::AbsCubic: return "abs3";
    case WitnessTag::DFunction: return "d";
    case WitnessTag::X4: return "x4";
    case WitnessTag::X5: return "x5";
  }
  return "?";
}

/// Highest derivative order each witness supports (its class).
inline int witness_class(WitnessTag w) {
  switch (w) {
    case WitnessTag::AbsCubic: return 2;
    case WitnessTag::DFunction: return 3;
    default: return 3;  // x4/x5 are smooth; eval caps at 3 like the others
  }
}

/// Piecewise closed-form value/derivative evaluation.
inline double witness_eval(WitnessTag w, double x, int order) {
  if (order < 0 || order > witness_class(w))
    throw std::invalid_argument("witness_eval: order exceeds the witness's smoothness class");
  switch (w) {
    case WitnessTag::AbsCubic:
      switch (order) {
        case 0: return std::abs(x) * x * x / 6.0;
        case 1: return x * std::abs(x) / 2.0;
        default: return std::abs(x);
      }
    case WitnessTag::DFunction:
      if (x <= -1.0) {
        switch (order) {
          case 0: return -x * x * x / 6.0 - x / 3.0;
          case 1: return -x * x / 2.0 - 1.0 / 3.0;
          case 2: return -x;
          default: return -1.0;
        }
      }
      if (x >= 1.0) {
        switch (order) {
          case 0: return x * x * x / 6.0;
          case 1: return x * x / 2.0;
          case 2: return x;
          default: return 1.0;
        }
      }
      switch (order) {
        case 0: return x * x * x * x / 24.0 + x * x / 4.0 - x / 6.0 + 1.0 / 24.0;
        case 1: return x * x * x / 6.0 + x / 2.0 - 1.0 / 6.0;
        case 2: return x * x / 2.0 + 0.5;
        default: return x;
      }
    case WitnessTag::X4:
      switch (order) {
        case 0: return x * x * x * x;
        case 1: return 4.0 * x * x * x;
        case 2: return 12.0 * x * x;
        default: return 24.0 * x;
      }
    case WitnessTag::X5:
      switch (order) {
        case 0: return x * x * x * x * x;
        case 1: return 5.0 * x * x * x * x;
        case 2: return 20.0 * x * x * x;
        default: return 60.0 * x * x;
      }
  }
  throw std::invalid_argument("witness_eval: unknown witness");
}

namespace detail {

inline void require_witness_param(WitnessTag w, double a) {
  if (w == WitnessTag::DFunction) {
    if (!(a > 1.0))
      throw DomainError("d-function witness requires half-width a > 1");
  } else if (!(a > 0.0)) {
    throw DomainError("witness half-width must be positive");
  }
}

}  // namespace detail

/// Closed-form T_w(-a, a).
inline double witness_t_symmetric(WitnessTag w, double a) {
  detail::require_witness_param(w, a);
  switch (w) {
    case WitnessTag::AbsCubic:
      return a * a * a / 72.0;
    case WitnessTag::DFunction:
      return a * a * a / 72.0 - a / 36.0 + 1.0 / 36.0 - 1.0 / (120.0 * a);
    case WitnessTag::X4: {
      const double h = 2.0 * a;
      return h * h * h * h / 120.0;
    }
    case WitnessTag::X5:
      return 0.0;  // (a + b)(b - a)^4 / 48 with a + b = 0
  }
  throw std::invalid_argument("witness_t_symmetric: unknown witness");
}

/// Closed-form integral of the witness over [-a, a] (piecewise
/// antiderivatives; the second entry of the double-entry bookkeeping,
/// the first being the numeric oracle).
inline double witness_integral_symmetric(WitnessTag w, double a) {
  detail::require_witness_param(w, a);
  switch (w) {
    case WitnessTag::AbsCubic:
      return a * a * a * a / 12.0;
    case WitnessTag::DFunction: {
      const double a2 = a * a, a4 = a2 * a2;
      return (a4 - 1.0) / 12.0 + (a2 - 1.0) / 6.0 + 4.0 / 15.0;
    }
    case WitnessTag::X4:
      return 2.0 * a * a * a * a * a / 5.0;
    case WitnessTag::X5:
      return 0.0;
  }
  throw std::invalid_argument("witness_integral_symmetric: unknown witness");
}

/// Analytic derivative range (m_k, M_k) of the witness's class-order
/// derivative over [-a, a].
inline std::pair<double, double> witness_range_symmetric(WitnessTag w, double a) {
  detail::require_witness_param(w, a);
  switch (w) {
    case WitnessTag::AbsCubic: return {0.0, a};          // g'' = |t|
    case WitnessTag::DFunction: return {-1.0, 1.0};      // d''' clamps at +/-1
    case WitnessTag::X4: return {24.0, 24.0};            // fourth derivative
    case WitnessTag::X5: return {-120.0 * a, 120.0 * a}; // fourth derivative
  }
  throw std::invalid_argument("witness_range_symmetric: unknown witness");
}

/// |T_w(-a,a)| / ((M_k - m_k)(2a)^k) for the witness's class k, using
/// the closed forms above. Degenerate ranges (x4: m4 = M4) instead
/// report the ratio of T to its exact-remainder bound, which is 1; x5
/// on a symmetric interval has T = 0 and reports 0.
inline double sharpness_ratio(WitnessTag w, double a) {
  detail::require_witness_param(w, a);
  const double h = 2.0 * a;
  switch (w) {
    case WitnessTag::AbsCubic: {
      const double t = witness_t_symmetric(w, a);
      return t / (a * h * h);  // M2 - m2 = a, k = 2
    }
    case WitnessTag::DFunction: {
      const double t = witness_t_symmetric(w, a);
      return std::abs(t) / (2.0 * h * h * h);  // M3 - m3 = 2, k = 3
    }
    case WitnessTag::X4:
      return witness_t_symmetric(w, a) / (24.0 * h * h * h * h / 2880.0);
    case WitnessTag::X5:
      return 0.0;
  }
  throw std::invalid_argument("sharpness_ratio: unknown witness");
}

/// Same ratio with T computed by the reference oracle instead of the
/// closed form (cross-checks the piecewise algebra).
inline double sharpness_ratio_numeric(WitnessTag w, double a, double tol = 1e-12) {
  detail::require_witness_param(w, a);
  const double integral = detail::oracle_integral(
      [w](double x) { return witness_eval(w, x, 0); }, -a, a, tol);
  const double smean = (witness_eval(w, -a, 0) + witness_eval(w, a, 0)) / 6.0 +
                       (2.0 / 3.0) * witness_eval(w, 0.0, 0);
  const double t = smean - integral / (2.0 * a);
  const double h = 2.0 * a;
  switch (w) {
    case WitnessTag::AbsCubic: return t / (a * h * h);
    case WitnessTag::DFunction: return std::abs(t) / (2.0 * h * h * h);
    case WitnessTag::X4: return t / (24.0 * h * h * h * h / 2880.0);
    case WitnessTag::X5: return std::abs(t);
  }
  throw std::invalid_argument("sharpness_ratio_numeric: unknown witness");
}

// ---------------------------------------------------------------------------
// Empirical best-constant search (the open problem stays open; this only
// records the best ratio a randomized spline family reaches).
// ---------------------------------------------------------------------------

enum class SearchClass { C1, C2 };

inline const char* search_class_name(SearchClass c) {
  return c == SearchClass::C1 ? "C1" : "C2";
}

struct SearchReport {
  SearchClass cls;
  std::uint64_t seed;
  std::size_t trials;
  double best_ratio;
  double paper_lower;   // witness-established lower bound (0 when none)
  double paper_upper;   // theorem constant
  std::string candidate_description;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

/// A candidate: s = g^(k) is piecewise linear through (knots, values);
/// g is recovered by k exact integrations (affine parts are irrelevant,
/// T annihilates them). Derivative ranges are exact: extrema of a
/// piecewise-linear function sit at knots.
struct SplineCandidate {
  std::vector<double> knots;   // ascending, >= 2 entries
  std::vector<double> values;  // s at knots
};

struct CandidateFacts {
  double t;       // T_g(A, B)
  double range;   // M_k - m_k
  double width;   // B - A
};

inline CandidateFacts evaluate_candidate(const SplineCandidate& c, int k) {
  const std::size_t n = c.knots.size();
  const double A = c.knots.front(), B = c.knots.back();
  const double mid = 0.5 * (A + B);
  // march segments accumulating g (and g' for k = 2), its integral, and
  // the midpoint value
  double g = 0.0, gp = 0.0, integral = 0.0;
  double g_mid = 0.0;
  bool mid_done = false;
  const double gA = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = c.knots[i + 1] - c.knots[i];
    const double s = c.values[i];
    const double slope = (c.values[i + 1] - c.values[i]) / h;
    const auto g_local = [&](double tau) {
      if (k == 1) return g + s * tau + slope * tau * tau / 2.0;
      return g + gp * tau + s * tau * tau / 2.0 + slope * tau * tau * tau / 6.0;
    };
    if (!mid_done && mid <= c.knots[i + 1]) {
      g_mid = g_local(mid - c.knots[i]);
      mid_done = true;
    }
    if (k == 1) {
      integral += g * h + s * h * h / 2.0 + slope * h * h * h / 6.0;
      g = g_local(h);
    } else {
      integral += g * h + gp * h * h / 2.0 + s * h * h * h / 6.0 +
                  slope * h * h * h * h / 24.0;
      g = g_local(h);
      gp += s * h + slope * h * h / 2.0;
    }
  }
  double mn = c.values[0], mx = c.values[0];
  for (double v : c.values) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  const double t = (gA + g) / 6.0 + (2.0 / 3.0) * g_mid - integral / (B - A);
  return CandidateFacts{t, mx - mn, B - A};
}

inline SplineCandidate seed_candidate(SearchClass cls) {
  if (cls == SearchClass::C2)  // g'' = |t| on [-1, 1]: achieves the ratio 1/288 exactly
    return SplineCandidate{{-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}};
  // four-band g' switching at a + w/6, the midpoint and b - w/6 (where
  // the order-1 representation kernel and the u/v roles flip), with
  // steep ramps; approaches the 5/72 supremum as the ramps sharpen
  const double d = 0.02;
  return SplineCandidate{
      {-1.0, -2.0 / 3.0 - d, -2.0 / 3.0 + d, -d, d, 2.0 / 3.0 - d, 2.0 / 3.0 + d, 1.0},
      {0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0}};
}

inline SplineCandidate random_candidate(std::uint64_t& rng) {
  const double A = -2.0 + 4.0 * uniform01(rng);
  const double w = 0.5 + 2.5 * uniform01(rng);
  const std::size_t interior = 1 + static_cast<std::size_t>(uniform01(rng) * 5.0);
  std::vector<double> u;
  u.push_back(0.0);
  for (std::size_t i = 0; i < interior; ++i) u.push_back(uniform01(rng));
  u.push_back(1.0);
  std::sort(u.begin(), u.end());
  SplineCandidate c;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = A + w * u[i];
    if (!c.knots.empty() && x - c.knots.back() < 1e-6 * w) continue;
    c.knots.push_back(x);
    c.values.push_back(-1.0 + 2.0 * uniform01(rng));
  }
  if (c.knots.size() < 2) {
    c.knots = {A, A + w};
    c.values = {0.0, 1.0};
  }
  c.knots.back() = A + w;
  return c;
}

inline std::string describe_candidate(const SplineCandidate& c, int k,
                                      bool is_seed, SearchClass cls) {
  if (is_seed)
    return cls == SearchClass::C2
               ? "seed witness: g''(t) = |t| on [-1, 1]"
               : "seed witness: four-band g' switching at a+w/6, midpoint, b-w/6";
  std::string s = "piecewise-linear g";
  s += k == 1 ? "'" : "''";
  s += " with " + std::to_string(c.knots.size()) + " knots on [" +
       format_double(c.knots.front()) + ", " + format_double(c.knots.back()) + "]";
  return s;
}

}  // namespace detail

/// Randomized search for large |T_g| / ((M_k - m_k)(b - a)^k) over
/// piecewise-polynomial candidates; trial 0 is a fixed seed witness
/// (the abs-cubic one for C2). Reports the best ratio found and never
/// claims optimality. Deterministic in (seed, trials).
inline SearchReport constant_search(SearchClass cls, std::uint64_t seed,
                                    std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("constant_search: trials must be >= 1");
  const int k = cls == SearchClass::C1 ? 1 : 2;
  double best = -1.0;
  std::string best_desc = "none";
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::uint64_t rng = seed ^ (0xA0761D6478BD642Full * (trial + 1));
    const bool is_seed = trial == 0;
    const detail::SplineCandidate cand =
        is_seed ? detail::seed_candidate(cls) : detail::random_candidate(rng);
    const detail::CandidateFacts f = detail::evaluate_candidate(cand, k);
    if (f.range < 1e-9) continue;  // degenerate constant-slope candidate
    const double ratio = std::abs(f.t) / (f.range * std::pow(f.width, k));
    if (ratio > best) {
      best = ratio;
      best_desc = detail::describe_candidate(cand, k, is_seed, cls);
    }
  }
  if (best < 0.0) best = 0.0;
  const double paper_lower = cls == SearchClass::C2 ? 1.0 / 288.0 : 0.0;
  const double paper_upper = cls == SearchClass::C2 ? 1.0 / 162.0 : 5.0 / 72.0;
  return SearchReport{cls, seed, trials, best, paper_lower, paper_upper, best_desc};
}

}  // namespace simpref
