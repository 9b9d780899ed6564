#pragma once

#include "stepresp/constitutive.hpp"
#include "stepresp/oracle.hpp"
#include "stepresp/signal.hpp"

namespace stepresp {

/// C^2 regularization of the Heaviside step with transition width 1/n:
///   H_n(t) = 0 for t < 0, 1 for t > 1/n, and on [0, 1/n]
///   H_n(t) = t^4 (d3 t^3 + d2 t^2 + d1 t + d0),
///   d3 = -20 n^7, d2 = 70 n^6, d1 = -84 n^5, d0 = 35 n^4.
/// Evaluated in the scaled variable tau = n t, where the polynomial reads
/// tau^4 (35 - 84 tau + 70 tau^2 - 20 tau^3); the monomial form in t loses all
/// significant digits to cancellation once n is in the hundreds.
class SmoothHeaviside {
 public:
  explicit SmoothHeaviside(int n);

  int n() const { return n_; }
  double width() const { return 1.0 / n_; }

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

 private:
  int n_;
};

/// F_n = d/dt(f+ H_n + g+ H_n') = f+' H_n + f+ H_n' + g+' H_n' + g+ H_n''.
/// Both signals must provide first derivatives.
double force_general(const SmoothSignal& f_plus, const SmoothSignal& g_plus, const SmoothHeaviside& hs, double t);

/// Regularized force for the jump x_eq -> x_jp held at rest:
///   F_n(t) = sigma+(t) H_n(t) + m (x_jp - x_eq) H_n''(t),
/// with sigma+ in closed form. The f+ H_n' term is dropped (f+(0) = 0).
class ExperimentForce {
 public:
  /// Throws UnsupportedRegimeError unless the model has the equal-exponent
  /// exponential dashpot and series spring.
  ExperimentForce(const SpringDashpotModel& model, double eps_jp, double x_jp, SmoothHeaviside hs);

  double operator()(double t) const;

  const SmoothHeaviside& heaviside() const { return hs_; }
  const ExpCaseParams& params() const { return params_; }

 private:
  ExpCaseParams params_;
  double eps_jp_;
  double inertial_;  // m (x_jp - x_eq)
  SmoothHeaviside hs_;
};

double force_experiment(const SpringDashpotModel& model, double eps_jp, double x_jp, const SmoothHeaviside& hs,
                        double t);

}  // namespace stepresp
