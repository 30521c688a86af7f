#pragma once

// Reference values frozen from an independent high-precision evaluator
// (40-digit arbitrary-precision quadrature / special functions), rounded
// to nearest binary64.
namespace fixtures {

inline constexpr double kCoth1 = 1.3130352854993312;
inline constexpr double kSinh1 = 1.1752011936438014;
inline constexpr double kSinh2 = 3.6268604078470186;
inline constexpr double kTwoSinh2 = 7.253720815694037;

// integral of coth(t)/t over [1, 2]
inline constexpr double kIntCothOverT_1_2 = 0.7916767937627763;

// means of coth(t)/t over the acceptance pairs
inline constexpr double kMeanCothOverT_05_1 = 2.3211348589864005;
inline constexpr double kMeanCothOverT_1_2 = 0.7916767937627763;
inline constexpr double kMeanCothOverT_01_02 = 50.33281612315647;

}  // namespace fixtures
