#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "simpref/composite.hpp"
#include "fixtures.hpp"

using namespace simpref;
constexpr double kE = std::numbers::e;

TEST_CASE("one classical C4 panel is exact for t^4") {
  CompositeOptions opt;
  const CompositeResult r = composite_integrate(parse("t^4"), Interval(0.0, 1.0),
                                                1, Rule::Classical,
                                                SmoothnessClass::C4, opt);
  CHECK(r.result.estimate == doctest::Approx(0.2 + 1.0 / 120.0).epsilon(1e-15));
  REQUIRE(r.result.enclosure.has_value());
  CHECK(r.result.enclosure->lower == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.result.enclosure->upper == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.result.enclosure->width() <= 1e-15);
  CHECK(r.result.panels == 1);
}

TEST_CASE("linear integrand has zero width under C1 panels") {
  const CompositeResult r = composite_integrate(parse("t"), Interval(0.0, 1.0), 8,
                                                Rule::Classical, SmoothnessClass::C1);
  CHECK(r.result.estimate == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.result.enclosure->width() <= 1e-15);
  CHECK(r.result.panels == 8);
  REQUIRE(r.partition.breakpoints.size() == 9);
  CHECK(r.partition.breakpoints.front() == 0.0);
  CHECK(r.partition.breakpoints.back() == 1.0);
  for (std::size_t i = 1; i < 9; ++i)
    CHECK(r.partition.breakpoints[i] > r.partition.breakpoints[i - 1]);
}

TEST_CASE("corrected C4 panels bracket exp with the stated width") {
  const Interval I(0.0, 1.0);
  const CompositeResult r = composite_integrate(parse("exp(t)"), I, 4,
                                                Rule::Corrected, SmoothnessClass::C4);
  REQUIRE(r.result.enclosure.has_value());
  CHECK(r.result.enclosure->contains(kE - 1.0));
  // maximal per-panel spread bounds the total: (11/57600) R 4 (1/4)^4
  double worst_spread = 0.0;
  for (const PanelRecord& p : r.partition.panels)
    worst_spread = std::max(worst_spread, p.defect.width() / 2.0 * 57600.0 / 11.0 /
                                              std::pow(0.25, 4));
  const double claimed = 11.0 / 57600.0 * worst_spread * 4.0 * std::pow(0.25, 4);
  CHECK(r.result.enclosure->width() <= claimed + 1e-15);
  CHECK(r.result.estimate == doctest::Approx(kE - 1.0).epsilon(1e-9));
}

TEST_CASE("defect-width total decays as 1/N^(k-1) with global ranges") {
  const Expr e = parse("exp(t)");
  const Interval I(0.0, 1.0);
  for (int k = 2; k <= 3; ++k) {
    CompositeOptions opt;
    opt.per_panel_ranges = false;
    opt.global_range = exact_range(k, I, 1.0, kE);
    const SmoothnessClass cls = k == 2 ? SmoothnessClass::C2 : SmoothnessClass::C3;
    const double base = composite_integrate(e, I, 1, Rule::Classical, cls, opt)
                            .defect_width_total;
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
      const double total =
          composite_integrate(e, I, n, Rule::Classical, cls, opt).defect_width_total;
      const double expect = base / std::pow(double(n), k - 1);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(std::abs(total - expect) <= 1e-12 * expect);
    }
  }
}

TEST_CASE("integral-enclosure width decays as 1/N^k with global ranges") {
  const Expr e = parse("exp(t)");
  const Interval I(0.0, 1.0);
  for (int k = 2; k <= 3; ++k) {
    CompositeOptions opt;
    opt.per_panel_ranges = false;
    opt.global_range = exact_range(k, I, 1.0, kE);
    const SmoothnessClass cls = k == 2 ? SmoothnessClass::C2 : SmoothnessClass::C3;
    const double base = composite_integrate(e, I, 1, Rule::Classical, cls, opt)
                            .integral_width_total;
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
      const double total =
          composite_integrate(e, I, n, Rule::Classical, cls, opt).integral_width_total;
      const double expect = base / std::pow(double(n), k);
      CHECK(std::abs(total - expect) <= 1e-12 * expect);
      // the lower/upper sums agree with the clean width up to summation dust
      const auto enc = composite_integrate(e, I, n, Rule::Classical, cls, opt)
                           .result.enclosure;
      CHECK(std::abs(enc->width() - total) <= 1e-13);
    }
  }
}

TEST_CASE("composite estimate equals the compensated panel sum") {
  const CompositeResult r = composite_integrate(parse("sin(t)"), Interval(0.0, 3.0),
                                                13, Rule::Classical,
                                                SmoothnessClass::C2,
                                                CompositeOptions{129, 1.05, true, {}, 1u << 16});
  std::vector<double> est;
  for (const PanelRecord& p : r.partition.panels) est.push_back(p.estimate);
  CHECK(r.result.estimate ==
        simpref::detail::compensated_sum(est.begin(), est.end()));
}

TEST_CASE("adaptive: quadratic converges in one panel") {
  const CompositeResult r = adaptive_integrate(parse("t^2"), Interval(0.0, 1.0),
                                               1e-10, Rule::Classical,
                                               SmoothnessClass::C2);
  CHECK(r.converged);
  CHECK(r.result.panels == 1);
  CHECK(r.result.estimate == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("adaptive corrected rule encloses 2 sinh 2 within 1e-8") {
  const CompositeResult r = adaptive_integrate(parse("cosh(t)"), Interval(-2.0, 2.0),
                                               1e-8, Rule::Corrected,
                                               SmoothnessClass::C4);
  CHECK(r.converged);
  REQUIRE(r.result.enclosure.has_value());
  CHECK(r.result.enclosure->width() <= 1e-8);
  CHECK(r.result.enclosure->contains(fixtures::kTwoSinh2));
}

TEST_CASE("adaptive classical C2 encloses the coth fixture") {
  const CompositeResult r = adaptive_integrate(parse("coth(t)/t"), Interval(1.0, 2.0),
                                               1e-8, Rule::Classical,
                                               SmoothnessClass::C2,
                                               CompositeOptions{257, 1.05, true, {}, 1u << 16});
  CHECK(r.converged);
  CHECK(r.result.enclosure->width() <= 1e-8);
  CHECK(r.result.enclosure->contains(fixtures::kIntCothOverT_1_2));
}

TEST_CASE("adaptive is deterministic and bisections refine monotonically") {
  const auto run = [] {
    return adaptive_integrate(parse("exp(t)*sin(2*t)"), Interval(0.0, 2.0), 1e-7,
                              Rule::Classical, SmoothnessClass::C2,
                              CompositeOptions{257, 1.05, true, {}, 1u << 16});
  };
  const CompositeResult a = run();
  const CompositeResult b = run();
  REQUIRE(a.partition.breakpoints.size() == b.partition.breakpoints.size());
  for (std::size_t i = 0; i < a.partition.breakpoints.size(); ++i) {
    CHECK(a.partition.breakpoints[i] == b.partition.breakpoints[i]);
    if (i > 0) CHECK(a.partition.breakpoints[i] > a.partition.breakpoints[i - 1]);
  }
  CHECK(a.result.estimate == b.result.estimate);
  CHECK(a.result.enclosure->lower == b.result.enclosure->lower);

  // total enclosure width never grows while panels are being recomputed
  REQUIRE(a.width_history.size() == a.bisections);
  double prev = std::numeric_limits<double>::infinity();
  for (double w : a.width_history) {
    CHECK(w <= prev + 1e-12 * (1.0 + prev));
    prev = w;
  }
}

TEST_CASE("panel cap flags a partial result instead of throwing") {
  CompositeOptions opt;
  opt.samples = 65;
  opt.panel_cap = 8;
  const CompositeResult r = adaptive_integrate(parse("coth(t)/t"), Interval(1.0, 2.0),
                                               1e-14, Rule::Classical,
                                               SmoothnessClass::C2, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.result.panels == 8);
  CHECK(r.result.enclosure->contains(fixtures::kIntCothOverT_1_2));
}

TEST_CASE("rule/class validation") {
  CHECK_THROWS_AS(composite_integrate(parse("t"), Interval(0.0, 1.0), 1,
                                      Rule::Corrected, SmoothnessClass::C2),
                  std::invalid_argument);
  CHECK_THROWS_AS(composite_integrate(parse("t"), Interval(0.0, 1.0), 0,
                                      Rule::Classical, SmoothnessClass::C1),
                  std::invalid_argument);
  CHECK_THROWS_AS(adaptive_integrate(parse("t"), Interval(0.0, 1.0), 0.0,
                                     Rule::Classical, SmoothnessClass::C1),
                  std::invalid_argument);
}
