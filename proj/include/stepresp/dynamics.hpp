#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stepresp/constitutive.hpp"
#include "stepresp/jump.hpp"
#include "stepresp/rkf45.hpp"
#include "stepresp/signal.hpp"

namespace stepresp {

struct MassState {
  double x = 0.0;
  double v = 0.0;
  double sigma = 0.0;
};

/// Time derivatives of MassState components.
struct MassRate {
  double dv = 0.0;
  double dx = 0.0;
  double dsigma = 0.0;
};

struct TrajectorySample {
  double t = 0.0;
  MassState state;
  double force = 0.0;
  MassRate rate;
};

/// Time-sampled record (t, x, v, sigma, F) with integrator statistics.
/// Samples are strictly increasing in t, the first one at t_start.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  IntegratorStats stats;

  std::vector<double> times() const;
  const TrajectorySample& back() const { return samples.back(); }
};

/// Stress rate for the spring-dashpot network,
///   g1(u) + d/dt g2(u) = d eps/dt,  u = sigma - g3(eps),
/// solved for d sigma/dt:
///   (deps_dt - g1(u)) / g2'(u) + g3'(eps) deps_dt.
/// Throws SingularityError if g2'(u) is zero or not finite.
double relax_rhs(const SpringDashpotModel& model, double sigma, double eps, double deps_dt);

/// Stress response sigma+(t) to a prescribed smooth strain eps+(t), t in
/// [t0, t1], from sigma+(t0) = sigma0. Samples carry sigma and F = sigma;
/// x and v are the kinematic equivalents x_eq (1 + eps), x_eq deps/dt.
Trajectory integrate_relaxation(const SpringDashpotModel& model, const SmoothSignal& eps_plus, double sigma0,
                                double t0, double t1, const IntegratorConfig& cfg);

/// (dv/dt, dx/dt, dsigma/dt) = ((F - sigma)/m, v, relax_rhs(sigma, eps, v/x_eq)),
/// with eps = (x - x_eq)/x_eq.
MassRate mass_rhs(const SpringDashpotModel& model, const MassState& state, double force);

struct MassIntegrationOptions {
  StepWindow window;                       // step cap, e.g. h <= 1/(20 n) on [0, 1/n]
  std::span<const double> extra_times{};  // extra output times, merged into the dense grid
};

/// Mass-spring-dashpot response to a continuous force F(t).
Trajectory integrate_mass(const SpringDashpotModel& model, const std::function<double(double)>& force,
                          const MassState& init, double t0, double t1, const IntegratorConfig& cfg,
                          const MassIntegrationOptions& options = {});

/// Smooth parts of the force ansatz F = d/dt(f+ H + g+ delta) that move the
/// mass along x = x_eq + (x+ - x_eq) H.
struct ForceIdentification {
  std::vector<double> t;
  std::vector<double> f_plus;
  std::vector<double> f_plus_rate;  // df+/dt = m x+'' + sigma+
  std::vector<double> sigma_plus;
  std::vector<double> sigma_plus_rate;
  double g0 = 0.0;  // g+(0+) = m (x+(0+) - x_eq)
  double sigma0 = 0.0;
  IntegratorStats stats;
};

/// Integrates df+/dt = m x+'' + sigma+ together with the stress equation for
/// the strain (x+ - x_eq)/x_eq, from f+(0+) = m x+'(0+) and the jump stress.
/// x_plus must provide value, first and second derivative.
ForceIdentification solve_force_for_motion(const SpringDashpotModel& model, const SmoothSignal& x_plus, double t1,
                                           const IntegratorConfig& cfg);

/// Lemma-1 conditions for a solved relaxation: the stress equation read as
///   g1(u+) H + d/dt((g2(u+) - eps+) H) ~ 0,  u+ = sigma+ - g3(eps+),
/// evaluated on the trajectory samples with their stored stress rates.
Lemma1Diagnostics relaxation_lemma1(const SpringDashpotModel& model, const SmoothSignal& eps_plus,
                                    const Trajectory& traj);

/// Lemma-1 conditions for the force identification: the momentum balance read as
///   -sigma+ H + d/dt((f+ - m x+') H + (g+ - m (x+ - x_eq)) delta) ~ 0.
Lemma1Diagnostics force_lemma1(const SpringDashpotModel& model, const SmoothSignal& x_plus,
                               const ForceIdentification& fi);

}  // namespace stepresp
