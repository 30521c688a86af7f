#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "simpref/ranges.hpp"
#include "fixtures.hpp"

using namespace simpref;

TEST_CASE("constant fourth derivative collapses the range") {
  const DerivativeRange r =
      estimate_derivative_range(parse("t^4"), Interval(0.0, 1.0), 4, 33);
  CHECK(r.m == 24.0);
  CHECK(r.M == 24.0);
  CHECK_FALSE(r.refined);
}

TEST_CASE("third derivative of cosh on [-2,2] spans [-sinh 2, sinh 2]") {
  const DerivativeRange r =
      estimate_derivative_range(parse("cosh(t)"), Interval(-2.0, 2.0), 3, 1025);
  CHECK(r.m == doctest::Approx(-fixtures::kSinh2).epsilon(1e-12));
  CHECK(r.M == doctest::Approx(fixtures::kSinh2).epsilon(1e-12));
}

TEST_CASE("monotone first derivative of exp hits the endpoints exactly") {
  const DerivativeRange r =
      estimate_derivative_range(parse("exp(t)"), Interval(0.0, 1.0), 1, 1025);
  CHECK(r.m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.M == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("interior extrema are refined beyond the grid") {
  // second derivative of sin is -sin; its max over [0, pi] is at odd
  // multiples of pi/2, between grid nodes for a coarse even-ish grid
  const Expr e = parse("sin(t)");
  const Interval I(0.5, 2.5);
  const DerivativeRange coarse = estimate_derivative_range(e, I, 2, 9);
  CHECK(coarse.m >= -1.0);            // never overshoots the true min
  CHECK(coarse.m <= -1.0 + 1e-4);     // parabolic probe gets very close
  CHECK(coarse.refined);
  const DerivativeRange fine = estimate_derivative_range(e, I, 2, 2049);
  CHECK(fine.m == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("range only widens along the nested doubling sequence") {
  const Expr e = parse("exp(0.7*t)*sin(2.1*t)" );
  const Interval I(-1.3, 1.9);
  double prev_m = std::numeric_limits<double>::infinity();
  double prev_M = -std::numeric_limits<double>::infinity();
  for (std::size_t n : {65u, 129u, 257u, 513u, 1025u}) {
    const DerivativeRange r = estimate_derivative_range(e, I, 2, n);
    CHECK(r.m <= prev_m + 1e-10 * (1.0 + std::abs(prev_m)));
    CHECK(r.M >= prev_M - 1e-10 * (1.0 + std::abs(prev_M)));
    prev_m = std::min(prev_m, r.m);
    prev_M = std::max(prev_M, r.M);
  }
}

TEST_CASE("doubling the grid moves the estimate by less than 1e-8 relative") {
  for (const char* text : {"exp(t)", "sin(1.7*t+0.3)", "cosh(1.3*t)", "log(t)"}) {
    const Expr e = parse(text);
    const Interval I = std::string(text) == "log(t)" ? Interval(0.4, 2.4)
                                                     : Interval(-1.5, 1.5);
    for (int n = 1; n <= 4; ++n) {
      const DerivativeRange r1 = estimate_derivative_range(e, I, n, 1025);
      const DerivativeRange r2 = estimate_derivative_range(e, I, n, 2049);
      CAPTURE(text);
      CAPTURE(n);
      CHECK(std::abs(r2.m - r1.m) <= 1e-8 * (1.0 + std::abs(r1.m)));
      CHECK(std::abs(r2.M - r1.M) <= 1e-8 * (1.0 + std::abs(r1.M)));
    }
  }
}

TEST_CASE("sub-interval ranges nest inside the full range") {
  const Expr e = parse("sin(2.2*t)+0.3*t^2");
  const Interval I(-2.0, 2.0);
  const DerivativeRange full = estimate_derivative_range(e, I, 2, 1025);
  uint64_t s = 99ull;
  for (int k = 0; k < 8; ++k) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    const double u = double(s >> 11) * 0x1.0p-53;
    const double a = -2.0 + 2.0 * u;
    const Interval J(a, a + 1.5);
    const DerivativeRange sub = estimate_derivative_range(e, J, 2, 1025);
    CHECK(sub.m >= full.m - 1e-9 * (1.0 + std::abs(full.m)));
    CHECK(sub.M <= full.M + 1e-9 * (1.0 + std::abs(full.M)));
  }
}

TEST_CASE("domain errors propagate and arguments are validated") {
  CHECK_THROWS_AS(estimate_derivative_range(parse("log(t)"), Interval(-1.0, 1.0), 1, 65),
                  DomainError);
  CHECK_THROWS_AS(estimate_derivative_range(parse("t"), Interval(0.0, 1.0), 5, 65),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_derivative_range(parse("t"), Interval(0.0, 1.0), 1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_range(2, Interval(0.0, 1.0), 3.0, 1.0), std::invalid_argument);
}

TEST_CASE("domain errors propagate out of parallel grid evaluation") {
  setenv("SIMPREF_THREADS", "4", 1);
  CHECK_THROWS_AS(
      estimate_derivative_range(parse("log(t)"), Interval(-1.0, 1.0), 1, 1025),
      DomainError);
  unsetenv("SIMPREF_THREADS");
}

TEST_CASE("grid evaluation is bitwise independent of the thread count") {
  const Expr e = parse("exp(0.9*t)*sin(1.8*t)+cosh(0.7*t)");
  const Interval I(-1.7, 1.9);
  setenv("SIMPREF_THREADS", "4", 1);
  const DerivativeRange par = estimate_derivative_range(e, I, 3, 2049);
  setenv("SIMPREF_THREADS", "1", 1);
  const DerivativeRange seq = estimate_derivative_range(e, I, 3, 2049);
  unsetenv("SIMPREF_THREADS");
  const DerivativeRange def = estimate_derivative_range(e, I, 3, 2049);
  CHECK(par.m == seq.m);
  CHECK(par.M == seq.M);
  CHECK(par.m == def.m);
  CHECK(par.M == def.M);
  CHECK(par.refined == seq.refined);
}

TEST_CASE("user-supplied exact ranges carry samples == 0") {
  const DerivativeRange r = exact_range(3, Interval(-1.0, 1.0), -1.0, 1.0);
  CHECK(r.samples == 0);
  CHECK(r.order == 3);
  CHECK_FALSE(r.refined);
}
