#pragma once

#include <cmath>

#include "stepresp/constitutive.hpp"

namespace fixtures {

inline const double kSqrt2 = std::sqrt(2.0);
inline const double kSqrt3 = std::sqrt(3.0);
inline const double kEpsJump = kSqrt2 - 1.0;

// Jump height quoted with the reference experiment (truncated to 10 digits).
inline constexpr double kQuotedSigmaJump = 3.570244804;

// Frozen from direct double-precision evaluation of
// (1/sqrt3) ln(1 + sqrt3 * 11 * (sqrt2 - 1)) + 3 (1 + 5 (sqrt2 - 1)^2)(sqrt2 - 1).
inline constexpr double kSigmaJump = 3.570244809002374;
inline constexpr double kParallelAtJump = 2.3086578651014147;    // 3 (1 + 5 e^2) e, e = sqrt2 - 1
inline constexpr double kSeriesInverseAtJump = 1.2615869439009597;  // ln(1 + sqrt3*11*e)/sqrt3

// x_eq = 1, m = 7, alpha = beta = sqrt3, gamma = 5, mu1 = 1/10, E2 = 11, E3 = 3.
inline stepresp::SpringDashpotModel reference_model() {
  return {stepresp::ConstitutiveFn::exp_saturating(kSqrt3, 0.1), stepresp::ConstitutiveFn::exp_saturating(kSqrt3, 11.0),
          stepresp::ConstitutiveFn::cubic_stiffening(3.0, 5.0), 7.0, 1.0};
}

inline stepresp::SpringDashpotModel linear_model(double mu1, double E2, double E3, double m = 1.0, double x_eq = 1.0) {
  return {stepresp::ConstitutiveFn::linear(1.0 / mu1), stepresp::ConstitutiveFn::linear(1.0 / E2),
          stepresp::ConstitutiveFn::linear(E3), m, x_eq};
}

inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace fixtures
