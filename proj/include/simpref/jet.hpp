#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "simpref/error.hpp"

namespace simpref {

/// Value and derivatives of orders 1..4 of a univariate function at a
/// point, stored in derivative form: d[k] = f^(k)(t). Entries above
/// `order` are not computed and must not be read.
struct Jet4 {
  std::array<double, 5> d{};
  int order = 4;

  double value() const { return d[0]; }

  double deriv(int k) const {
    assert(k >= 0 && k <= order);
    return d[static_cast<std::size_t>(k)];
  }
};

namespace detail {

inline constexpr double kBinomial[5][5] = {
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
};

inline Jet4 jet_const(double v, int order) {
  Jet4 r;
  r.order = order;
  r.d[0] = v;
  return r;
}

inline Jet4 jet_var(double t, int order) {
  Jet4 r;
  r.order = order;
  r.d[0] = t;
  if (order >= 1) r.d[1] = 1.0;
  return r;
}

inline Jet4 jet_neg(const Jet4& x) {
  Jet4 r;
  r.order = x.order;
  for (int k = 0; k <= x.order; ++k) r.d[k] = -x.d[k];
  return r;
}

inline Jet4 jet_add(const Jet4& a, const Jet4& b) {
  Jet4 r;
  r.order = a.order < b.order ? a.order : b.order;
  for (int k = 0; k <= r.order; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}

inline Jet4 jet_sub(const Jet4& a, const Jet4& b) {
  Jet4 r;
  r.order = a.order < b.order ? a.order : b.order;
  for (int k = 0; k <= r.order; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}

// Leibniz: (fg)^(k) = sum_j C(k,j) f^(j) g^(k-j)
inline Jet4 jet_mul(const Jet4& a, const Jet4& b) {
  Jet4 r;
  r.order = a.order < b.order ? a.order : b.order;
  for (int k = 0; k <= r.order; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += kBinomial[k][j] * a.d[j] * b.d[k - j];
    r.d[k] = s;
  }
  return r;
}

// From f = h*g: h^(k) = (f^(k) - sum_{j<k} C(k,j) h^(j) g^(k-j)) / g(0)
inline Jet4 jet_div(const Jet4& a, const Jet4& b) {
  if (b.d[0] == 0.0) throw DomainError("division by zero");
  Jet4 r;
  r.order = a.order < b.order ? a.order : b.order;
  for (int k = 0; k <= r.order; ++k) {
    double s = a.d[k];
    for (int j = 0; j < k; ++j) s -= kBinomial[k][j] * r.d[j] * b.d[k - j];
    r.d[k] = s / b.d[0];
  }
  return r;
}

/// Faa di Bruno to order 4. `outer[k]` must hold F^(k) at u.d[0].
inline Jet4 jet_compose(const Jet4& u, const std::array<double, 5>& outer) {
  const double u1 = u.d[1], u2 = u.d[2], u3 = u.d[3], u4 = u.d[4];
  Jet4 r;
  r.order = u.order;
  r.d[0] = outer[0];
  if (r.order >= 1) r.d[1] = outer[1] * u1;
  if (r.order >= 2) r.d[2] = outer[2] * u1 * u1 + outer[1] * u2;
  if (r.order >= 3)
    r.d[3] = outer[3] * u1 * u1 * u1 + 3.0 * outer[2] * u1 * u2 + outer[1] * u3;
  if (r.order >= 4)
    r.d[4] = outer[4] * u1 * u1 * u1 * u1 + 6.0 * outer[3] * u1 * u1 * u2 +
             outer[2] * (3.0 * u2 * u2 + 4.0 * u1 * u3) + outer[1] * u4;
  return r;
}

inline bool is_integer(double x) {
  return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15;
}

/// u^p for a constant exponent p. F^(k)(y) = p(p-1)...(p-k+1) y^(p-k).
inline Jet4 jet_pow(const Jet4& u, double p) {
  const double y = u.d[0];
  const bool int_p = is_integer(p);
  if (y < 0.0 && !int_p)
    throw DomainError("power of negative base with non-integer exponent");
  std::array<double, 5> outer{};
  double coef = 1.0;
  for (int k = 0; k <= u.order; ++k) {
    if (k > 0) coef *= p - static_cast<double>(k - 1);
    if (coef == 0.0) {
      outer[k] = 0.0;
      continue;
    }
    const double q = p - static_cast<double>(k);
    if (y == 0.0) {
      if (q < 0.0) throw DomainError("zero raised to a negative power");
      outer[k] = q == 0.0 ? coef : 0.0;
    } else {
      outer[k] = coef * std::pow(y, q);
    }
  }
  return jet_compose(u, outer);
}

inline Jet4 jet_sin(const Jet4& u) {
  const double s = std::sin(u.d[0]), c = std::cos(u.d[0]);
  return jet_compose(u, {s, c, -s, -c, s});
}

inline Jet4 jet_cos(const Jet4& u) {
  const double s = std::sin(u.d[0]), c = std::cos(u.d[0]);
  return jet_compose(u, {c, -s, -c, s, c});
}

inline Jet4 jet_exp(const Jet4& u) {
  const double e = std::exp(u.d[0]);
  return jet_compose(u, {e, e, e, e, e});
}

inline Jet4 jet_log(const Jet4& u) {
  const double y = u.d[0];
  if (y <= 0.0) throw DomainError("log of non-positive value");
  const double i1 = 1.0 / y, i2 = i1 * i1;
  return jet_compose(u, {std::log(y), i1, -i2, 2.0 * i2 * i1, -6.0 * i2 * i2});
}

inline Jet4 jet_sqrt(const Jet4& u) {
  const double y = u.d[0];
  if (y < 0.0) throw DomainError("sqrt of negative value");
  if (y == 0.0) {
    if (u.order >= 1) throw DomainError("sqrt derivative at zero");
    return jet_const(0.0, 0);
  }
  const double r = std::sqrt(y), i = 1.0 / y;
  return jet_compose(u, {r, 0.5 * r * i, -0.25 * r * i * i,
                         0.375 * r * i * i * i, -0.9375 * r * i * i * i * i});
}

inline Jet4 jet_sinh(const Jet4& u) {
  const double s = std::sinh(u.d[0]), c = std::cosh(u.d[0]);
  return jet_compose(u, {s, c, s, c, s});
}

inline Jet4 jet_cosh(const Jet4& u) {
  const double s = std::sinh(u.d[0]), c = std::cosh(u.d[0]);
  return jet_compose(u, {c, s, c, s, c});
}

inline Jet4 jet_tan(const Jet4& u) {
  const Jet4 c = jet_cos(u);
  if (c.d[0] == 0.0) throw DomainError("tan at an odd multiple of pi/2");
  return jet_div(jet_sin(u), c);
}

inline Jet4 jet_tanh(const Jet4& u) { return jet_div(jet_sinh(u), jet_cosh(u)); }

// cosh/sinh quotient, not a bespoke recurrence
inline Jet4 jet_coth(const Jet4& u) {
  const Jet4 s = jet_sinh(u);
  if (s.d[0] == 0.0) throw DomainError("coth at zero");
  return jet_div(jet_cosh(u), s);
}

/// Derivatives of |.| are rejected everywhere: one-sided values at the
/// kink would be silently wrong, and smooth callers can drop the abs.
inline Jet4 jet_abs(const Jet4& u) {
  if (u.order >= 1)
    throw NonSmoothError("derivative of abs requested (supported for order 0 only)");
  return jet_const(std::abs(u.d[0]), 0);
}

}  // namespace detail
}  // namespace simpref
