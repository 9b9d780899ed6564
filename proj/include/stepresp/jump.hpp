#pragma once

#include <span>

#include "stepresp/constitutive.hpp"
#include "stepresp/signal.hpp"

namespace stepresp {

/// Values at t = 0+ that restart the classical equations after a step input.
struct JumpValues {
  double sigma0 = 0.0;  // instantaneous stress sigma+(0+)
  double f0 = 0.0;      // f+(0+) = m dx+/dt(0+)
  double g0 = 0.0;      // g+(0+) = m (x+(0+) - x_eq)
  double eps_jp = 0.0;  // strain jump eps+(0+)
};

/// Instantaneous stress for a strain jump: g2^{-1}(eps) + g3(eps).
/// Only the springs respond at t = 0+; the dashpot is rigid. The jump
/// residual g2(sigma0 - g3(eps)) - eps is verified afterwards and a
/// NumericalError is thrown if it exceeds 1e-10 max(1, |eps|).
double strain_jump_stress(const SpringDashpotModel& model, double eps_jp);

/// g2(sigma0 - g3(eps_jp)) - eps_jp; zero iff sigma0 is the jump stress.
double strain_jump_residual(const SpringDashpotModel& model, double sigma0, double eps_jp);

/// Jump values of the force ansatz F = d/dt(f+ H + g+ delta) needed to move the
/// mass along x = x_eq + (x+ - x_eq) H. Needs x_plus value and first derivative.
JumpValues mass_jump_values(const SpringDashpotModel& model, const SmoothSignal& x_plus);

/// Diagnostics for h H + d/dt(f H + g delta) ~ 0, which holds iff f(0+) = 0,
/// g(0+) = 0 and h + df/dt = 0 for t >= 0.
struct Lemma1Diagnostics {
  double f_at_0 = 0.0;            // |f(0+)|
  double g_at_0 = 0.0;            // |g(0+)|
  double max_ode_residual = 0.0;  // max over grid of |h + df/dt|

  bool within(double tol) const { return f_at_0 <= tol && g_at_0 <= tol && max_ode_residual <= tol; }
};

/// Evaluates the three conditions on an increasing grid whose first point is
/// taken as 0+. df/dt is taken from f when it provides a derivative, otherwise
/// from second-order finite differences over the grid neighbours.
Lemma1Diagnostics lemma1_check(const SmoothSignal& f, const SmoothSignal& g, const SmoothSignal& h,
                               std::span<const double> grid);

}  // namespace stepresp
