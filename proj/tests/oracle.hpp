// Test-side oracles: independent reference routes the implementation is
// checked against. Everything here recomputes from scratch (extended
// precision term-by-term summation, the expanded trial-information formula)
// and never calls the library paths under test.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// term-by-term divergence at long double precision
inline long double kl_bits(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    s += static_cast<long double>(p[i]) *
         std::log2l(static_cast<long double>(p[i]) / static_cast<long double>(q[i]));
  }
  return s;
}

inline long double entropy_bits(const std::vector<double>& p) {
  long double s = 0.0L;
  for (double v : p) {
    if (v == 0.0) continue;
    s -= static_cast<long double>(v) * std::log2l(static_cast<long double>(v));
  }
  return s;
}

// the trial-information closed form written out as its four log terms
inline long double bandit_phi_bits(long double w, long double t, long double pi) {
  const long double a =
      (w + 2) / (t + 3) * std::log2l((w + 2) * (t + 2) / ((t + 3) * (w + 1)));
  const long double b = (t - w + 1) / (t + 3) * std::log2l((t + 2) / (t + 3));
  const long double c = (w + 1) / (t + 3) * std::log2l((t + 2) / (t + 3));
  const long double d =
      (t - w + 2) / (t + 3) * std::log2l((t - w + 2) * (t + 2) / ((t + 3) * (t - w + 1)));
  return pi * (a + b) + (1 - pi) * (c + d);
}

// frozen expected values, computed with 50-digit arithmetic
inline constexpr double kKL_TwoThirds_Uniform = 0.081704165945510485;   // D((2/3,1/3)||(1/2,1/2))
inline constexpr double kEntropy_QuarterThree = 0.81127812445913286;    // H(0.25,0.75)
inline constexpr double kIdealLen_ThreeQuarters = 0.41503749927884382;  // -log2(0.75)
inline constexpr double kPriorUpdate_BooleanPrime = 0.45643555680040359;  // D((7/8,1/8)||(1/2,1/2))
inline constexpr double kMutualInfo_BooleanPrime = 0.29356444319959641;   // 0.75 - the above
inline constexpr double kKL_NineTenths_Swapped = 2.5359400011538499;    // D((.9,.1)||(.1,.9))

}  // namespace oracle
