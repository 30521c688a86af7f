#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simpref {

/// Base class for every error this library raises on bad runtime input.
/// Programmer errors (wrong enum, order out of 1..4, ...) use
/// std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression text could not be parsed.
struct ParseError : Error {
  enum class Kind { Syntax, UnknownIdentifier, Arity };

  ParseError(Kind k, std::size_t byte_offset, const std::string& what_arg)
      : Error(what_arg), kind(k), offset(byte_offset) {}

  Kind kind;
  std::size_t offset;  // byte offset into the source text
};

/// Evaluation left the mathematical domain (log of non-positive value,
/// coth at 0, division by zero, overflow to non-finite...).
struct DomainError : Error {
  using Error::Error;
};

/// A derivative was requested where the function is not smooth (abs).
struct NonSmoothError : Error {
  using Error::Error;
};

/// The reference integrator failed to reach the requested tolerance
/// within its panel budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A sampled convexity/concavity assertion failed at some grid point.
struct ConvexityError : Error {
  using Error::Error;
};

/// The Eq.(5)/Eq.(6) brackets do not intersect; the supplied second
/// derivative range is too loose (or wrong).
struct EmptyIntersectionError : Error {
  using Error::Error;
};

}  // namespace simpref
