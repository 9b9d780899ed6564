#include "stepresp/regularize.hpp"

#include <fmt/format.h>

#include "stepresp/errors.hpp"

namespace stepresp {

SmoothHeaviside::SmoothHeaviside(int n) : n_(n) {
  if (n < 1) throw ConfigError(fmt::format("smoothing index n must be a positive integer, got {}", n));
}

double SmoothHeaviside::value(double t) const {
  if (t < 0.0) return 0.0;
  const double tau = n_ * t;
  if (tau > 1.0) return 1.0;
  const double tau2 = tau * tau;
  return tau2 * tau2 * (35.0 + tau * (-84.0 + tau * (70.0 - 20.0 * tau)));
}

double SmoothHeaviside::d1(double t) const {
  if (t < 0.0) return 0.0;
  const double tau = n_ * t;
  if (tau > 1.0) return 0.0;
  const double w = tau * (1.0 - tau);
  return 140.0 * n_ * w * w * w;
}

double SmoothHeaviside::d2(double t) const {
  if (t < 0.0) return 0.0;
  const double tau = n_ * t;
  if (tau > 1.0) return 0.0;
  const double w = tau * (1.0 - tau);
  return 420.0 * static_cast<double>(n_) * n_ * w * w * (1.0 - 2.0 * tau);
}

double force_general(const SmoothSignal& f_plus, const SmoothSignal& g_plus, const SmoothHeaviside& hs, double t) {
  if (!f_plus.has_d1() || !g_plus.has_d1()) throw ConfigError("force_general needs derivatives of f+ and g+");
  const double h = hs.value(t);
  const double h1 = hs.d1(t);
  const double h2 = hs.d2(t);
  double force = 0.0;
  if (h != 0.0) force += f_plus.d1(t) * h;
  if (h1 != 0.0) force += (f_plus.value(t) + g_plus.d1(t)) * h1;
  if (h2 != 0.0) force += g_plus.value(t) * h2;
  return force;
}

ExperimentForce::ExperimentForce(const SpringDashpotModel& model, double eps_jp, double x_jp, SmoothHeaviside hs)
    : params_(ExpCaseParams::from_model(model)),
      eps_jp_(eps_jp),
      inertial_(model.mass * (x_jp - model.x_eq)),
      hs_(hs) {
  // validate the log argument once
  (void)sigma_plus_closed(params_, eps_jp_, 0.0);
}

double ExperimentForce::operator()(double t) const {
  if (t < 0.0) return 0.0;
  return sigma_plus_closed(params_, eps_jp_, t) * hs_.value(t) + inertial_ * hs_.d2(t);
}

double force_experiment(const SpringDashpotModel& model, double eps_jp, double x_jp, const SmoothHeaviside& hs,
                        double t) {
  return ExperimentForce(model, eps_jp, x_jp, hs)(t);
}

}  // namespace stepresp
