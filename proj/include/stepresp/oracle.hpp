#pragma once

#include "stepresp/constitutive.hpp"

namespace stepresp {

/// Exponential dashpot and series spring sharing one exponent,
///   g1(s) = (exp(alpha s) - 1) / (alpha mu1),
///   g2(s) = (exp(alpha s) - 1) / (alpha E2),
/// with an arbitrary parallel spring g3. In this regime the relaxation
/// equation has a closed-form solution.
struct ExpCaseParams {
  double alpha = 1.0;
  double mu1 = 1.0;
  double E2 = 1.0;
  ConstitutiveFn g3 = ConstitutiveFn::linear(1.0);
  double m = 1.0;
  double x_eq = 1.0;

  /// Throws UnsupportedRegimeError unless g1 and g2 are exponential laws
  /// with equal exponents.
  static ExpCaseParams from_model(const SpringDashpotModel& model);

  double relaxation_rate() const { return E2 / mu1; }
};

/// Closed-form stress after a constant strain jump eps_jp:
///   (1/alpha) ln(1 + alpha E2 eps_jp exp(-E2 t / mu1)) + g3(eps_jp).
/// Throws DomainError for t < 0 or 1 + alpha E2 eps_jp <= 0.
double sigma_plus_closed(const ExpCaseParams& p, double eps_jp, double t);

/// u+ = alpha (sigma+ - g3(eps_jp)) = ln(1 + (exp(u+(0+)) - 1) exp(-E2 t / mu1)).
double u_plus_closed(const ExpCaseParams& p, double eps_jp, double t);

/// f+(t) = integral_0^t sigma+(s) ds by adaptive Gauss-Kronrod quadrature,
/// absolute accuracy 1e-10 (NumericalError otherwise).
double f_plus_quadrature(const ExpCaseParams& p, double eps_jp, double t);

/// g+ = m (x_jp - x_eq).
double g_plus_constant(const ExpCaseParams& p, double x_jp);

/// Linear standard solid (g1 = s/mu1, g2 = s/E2, g3 = E3 s) after a strain
/// jump: E3 eps_jp + E2 eps_jp exp(-E2 t / mu1).
double linear_ssm_step(double E2, double E3, double mu1, double eps_jp, double t);

}  // namespace stepresp
