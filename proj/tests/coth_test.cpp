#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simpref/coth_bounds.hpp"
#include "simpref/simpson.hpp"
#include "fixtures.hpp"

using namespace simpref;

TEST_CASE("coth_scalar: quotient, series fallback, continuity at the switch") {
  CHECK(coth_scalar(1.0) == doctest::Approx(fixtures::kCoth1).epsilon(1e-15));
  CHECK(coth_scalar(-1.0) == doctest::Approx(-fixtures::kCoth1).epsilon(1e-15));
  // series region: compare against the quotient at the same points
  for (double t : {5e-5, 9e-5, -7e-5}) {
    const double series = coth_scalar(t);
    const double quotient = std::cosh(t) / std::sinh(t);
    CHECK(std::abs(series - quotient) <= 1e-12 * std::abs(quotient));
  }
  CHECK_THROWS_AS(coth_scalar(0.0), DomainError);
}

TEST_CASE("thm5 bracket: fixtures, gap arithmetic, limits") {
  {
    const CothBounds b = coth_mean_bounds(1.0, 2.0);
    CHECK(b.lower <= fixtures::kMeanCothOverT_1_2);
    CHECK(b.upper >= fixtures::kMeanCothOverT_1_2);
    CHECK_FALSE(b.corrected.has_value());
  }
  {  // the gap is exactly the subtracted term
    const CothBounds b = coth_mean_bounds(0.5, 1.0);
    CHECK(b.upper - b.lower ==
          doctest::Approx(16.0 / 243.0 * 1.75).epsilon(1e-13));
    CHECK(b.lower <= fixtures::kMeanCothOverT_05_1);
    CHECK(b.upper >= fixtures::kMeanCothOverT_05_1);
  }
  {  // shrinking interval: the bracket converges to the pointwise
     // eq11 bracket at t = 1 (which still contains coth(1)/1)
    const CothBounds b = coth_mean_bounds(0.999999, 1.000001);
    const auto [lo1, hi1] = eq11_pointwise(1.0);
    CHECK(std::abs(b.lower - lo1) <= 1e-4);
    CHECK(std::abs(b.upper - hi1) <= 1e-4);
    CHECK(b.lower <= fixtures::kCoth1);
    CHECK(b.upper >= fixtures::kCoth1);
  }
  CHECK_THROWS_AS(coth_mean_bounds(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(coth_mean_bounds(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(coth_mean_bounds(2.0, 1.0), DomainError);
}

TEST_CASE("thm6 disc: radii and containment at the fixture pairs") {
  {
    const CothBounds b = coth_mean_corrected(1.0, 2.0);
    CHECK(*b.corrected_radius == doctest::Approx(22.0 / 1125.0 * 31.0).epsilon(1e-14));
    CHECK(std::abs(*b.corrected - fixtures::kMeanCothOverT_1_2) <= *b.corrected_radius);
  }
  {
    const CothBounds b = coth_mean_corrected(0.1, 0.2);
    CHECK(*b.corrected_radius ==
          doctest::Approx(22.0 / 1125.0 * (std::pow(0.2, 5) - std::pow(0.1, 5)) / 0.1)
              .epsilon(1e-13));
    CHECK(*b.corrected_radius == doctest::Approx(6.1e-5).epsilon(0.01));
    CHECK(std::abs(*b.corrected - fixtures::kMeanCothOverT_01_02) <= *b.corrected_radius);
  }
  {
    const CothBounds b = coth_mean_corrected(0.5, 1.0);
    CHECK(std::abs(*b.corrected - fixtures::kMeanCothOverT_05_1) <= *b.corrected_radius);
  }
  {  // the corrected center stays inside the thm5 bracket on these pairs
    for (const auto& p : {std::pair{0.5, 1.0}, {1.0, 2.0}, {0.1, 0.2}}) {
      const CothBounds b5 = coth_mean_bounds(p.first, p.second);
      const CothBounds b6 = coth_mean_corrected(p.first, p.second);
      CHECK(*b6.corrected >= b5.lower);
      CHECK(*b6.corrected <= b5.upper);
    }
  }
  CHECK_THROWS_AS(coth_mean_corrected(0.0, 1.0), DomainError);
}

TEST_CASE("eq11 pointwise bracket") {
  {
    const auto [lo, hi] = eq11_pointwise(1.0);
    const double v = fixtures::kCoth1;
    CHECK(hi == doctest::Approx(v * v - 1.0 / 3.0).epsilon(1e-14));
    CHECK(lo == doctest::Approx(v * v - 1.0 / 3.0 - 16.0 / 81.0).epsilon(1e-13));
    CHECK(v / 1.0 >= lo);
    CHECK(v / 1.0 <= hi);
  }
  {  // t -> 0: upper bound approaches coth t / t like 4t^2/45
    const double t = 1e-3;
    const auto [lo, hi] = eq11_pointwise(t);
    const double mid = coth_scalar(t) / t;
    CHECK(hi - mid <= 1e-5);
    CHECK(hi - mid >= 0.0);
    CHECK(mid - lo >= 0.0);
  }
  {
    const auto [lo, hi] = eq11_pointwise(5.0);
    const double mid = coth_scalar(5.0) / 5.0;
    CHECK(mid - lo > 0.0);
    CHECK(hi - mid > 0.0);
  }
  CHECK_THROWS_AS(eq11_pointwise(0.0), DomainError);
  CHECK_THROWS_AS(eq11_pointwise(-1.0), DomainError);
}

TEST_CASE("eq11 containment on a 1000-point log grid") {
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = std::pow(10.0, -3.0 + 4.0 * i / 999.0);
    const auto [lo, hi] = eq11_pointwise(t);
    const double mid = coth_scalar(t) / t;
    worst = std::min(worst, std::min(mid - lo, hi - mid));
  }
  CHECK(worst >= -1e-12);
}

TEST_CASE("integrating eq11 over [y,x] reproduces the thm5 bounds") {
  for (const auto& p : {std::pair{0.5, 1.0}, {1.0, 2.0}}) {
    const double w = p.second - p.first;
    const CothBounds b = coth_mean_bounds(p.first, p.second);
    const double up = simpref::detail::oracle_integral(
                          [](double t) {
                            const double c = coth_scalar(t);
                            return c * c - 1.0 / 3.0;
                          },
                          p.first, p.second, 1e-12) / w;
    const double lo = simpref::detail::oracle_integral(
                          [](double t) {
                            const double c = coth_scalar(t);
                            return c * c - 1.0 / 3.0 - 16.0 / 81.0 * t * t;
                          },
                          p.first, p.second, 1e-12) / w;
    CHECK(std::abs(up - b.upper) <= 1e-10 * (1.0 + std::abs(b.upper)));
    CHECK(std::abs(lo - b.lower) <= 1e-10 * (1.0 + std::abs(b.lower)));
  }
}

// The disc diameter grows like x^4 while the thm5 gap grows like x^2,
// so the advantage is a small-argument statement: it holds for x <= 1
// and flips for larger arguments.
TEST_CASE("thm6 disc is narrower than the thm5 gap on short low intervals") {
  for (double y : {0.05, 0.3, 0.6, 0.9}) {
    const double x = y + 0.1;
    const CothBounds b6 = coth_mean_corrected(y, x);
    const double gap = 16.0 / 243.0 * (x * x + x * y + y * y);
    CHECK(2.0 * *b6.corrected_radius <= gap);
  }
  {  // and indeed flips once x*y is large enough
    const CothBounds b6 = coth_mean_corrected(2.0, 2.1);
    CHECK(2.0 * *b6.corrected_radius >
          16.0 / 243.0 * (2.1 * 2.1 + 2.1 * 2.0 + 4.0));
  }
}
