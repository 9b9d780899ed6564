#include "stepresp/oracle.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "stepresp/errors.hpp"

namespace stepresp {

ExpCaseParams ExpCaseParams::from_model(const SpringDashpotModel& model) {
  const auto* dashpot = model.dashpot.as_exp();
  const auto* spring = model.series_spring.as_exp();
  if (!dashpot || !spring)
    throw UnsupportedRegimeError("closed form needs exponential dashpot and series spring laws; use the integrator");
  if (std::abs(dashpot->a - spring->a) > 1e-12 * std::max(dashpot->a, spring->a))
    throw UnsupportedRegimeError(fmt::format(
        "closed form needs equal exponents for dashpot and series spring (got {} and {}); use the integrator",
        dashpot->a, spring->a));
  ExpCaseParams p;
  p.alpha = dashpot->a;
  p.mu1 = dashpot->c;
  p.E2 = spring->c;
  p.g3 = model.parallel_spring;
  p.m = model.mass;
  p.x_eq = model.x_eq;
  return p;
}

double u_plus_closed(const ExpCaseParams& p, double eps_jp, double t) {
  if (!(t >= 0.0)) throw DomainError(fmt::format("closed-form response defined for t >= 0, got {}", t));
  const double jump = p.alpha * p.E2 * eps_jp;  // exp(u+(0+)) - 1
  if (!(jump > -1.0))
    throw DomainError(fmt::format("1 + alpha E2 eps_jp must be positive (eps_jp = {})", eps_jp));
  return std::log1p(jump * std::exp(-p.relaxation_rate() * t));
}

double sigma_plus_closed(const ExpCaseParams& p, double eps_jp, double t) {
  return u_plus_closed(p, eps_jp, t) / p.alpha + p.g3.eval(eps_jp);
}

double f_plus_quadrature(const ExpCaseParams& p, double eps_jp, double t) {
  if (!(t >= 0.0)) throw DomainError(fmt::format("f+ defined for t >= 0, got {}", t));
  if (t == 0.0) return 0.0;
  // on the unit interval; the error estimate misbehaves on very short spans
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double w) { return t * sigma_plus_closed(p, eps_jp, t * w); }, 0.0, 1.0, 15, 1e-12, &error);
  if (!(error <= 1e-10)) throw NumericalError(fmt::format("quadrature error estimate {} above 1e-10", error));
  return value;
}

double g_plus_constant(const ExpCaseParams& p, double x_jp) { return p.m * (x_jp - p.x_eq); }

double linear_ssm_step(double E2, double E3, double mu1, double eps_jp, double t) {
  if (!(t >= 0.0)) throw DomainError(fmt::format("step response defined for t >= 0, got {}", t));
  return E3 * eps_jp + E2 * eps_jp * std::exp(-E2 * t / mu1);
}

}  // namespace stepresp
