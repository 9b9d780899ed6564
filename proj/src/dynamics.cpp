#include "stepresp/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "stepresp/errors.hpp"
#include "stepresp/jump.hpp"

namespace stepresp {

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.t);
  return t;
}

double relax_rhs(const SpringDashpotModel& model, double sigma, double eps, double deps_dt) {
  const double u = sigma - model.parallel_spring.eval(eps);
  const double compliance_rate = model.series_spring.deriv(u);
  if (!(compliance_rate != 0.0) || !std::isfinite(compliance_rate))
    throw SingularityError(fmt::format("series spring derivative is {} at s = {}", compliance_rate, u));
  return (deps_dt - model.dashpot.eval(u)) / compliance_rate + model.parallel_spring.deriv(eps) * deps_dt;
}

Trajectory integrate_relaxation(const SpringDashpotModel& model, const SmoothSignal& eps_plus, double sigma0,
                                double t0, double t1, const IntegratorConfig& cfg) {
  if (!eps_plus.has_d1()) throw ConfigError("relaxation needs the strain rate");
  auto rhs = [&](double t, const std::array<double, 1>& y) {
    return std::array<double, 1>{relax_rhs(model, y[0], eps_plus.value(t), eps_plus.d1(t))};
  };
  const auto sol = rkf45_integrate<1>(rhs, t0, {sigma0}, t1, cfg);
  Trajectory tr;
  tr.stats = sol.stats;
  tr.samples.reserve(sol.samples.size());
  for (const auto& s : sol.samples) {
    TrajectorySample ts;
    ts.t = s.t;
    ts.state = {model.x_eq * (1.0 + eps_plus.value(s.t)), model.x_eq * eps_plus.d1(s.t), s.y[0]};
    ts.force = s.y[0];
    ts.rate.dsigma = s.dy[0];
    ts.rate.dx = ts.state.v;
    tr.samples.push_back(ts);
  }
  return tr;
}

MassRate mass_rhs(const SpringDashpotModel& model, const MassState& state, double force) {
  const double eps = model.strain(state.x);
  return {(force - state.sigma) / model.mass, state.v, relax_rhs(model, state.sigma, eps, state.v / model.x_eq)};
}

Trajectory integrate_mass(const SpringDashpotModel& model, const std::function<double(double)>& force,
                          const MassState& init, double t0, double t1, const IntegratorConfig& cfg,
                          const MassIntegrationOptions& options) {
  model.validate();
  using State = std::array<double, 3>;  // x, v, sigma
  auto rhs = [&](double t, const State& y) {
    const MassRate r = mass_rhs(model, {y[0], y[1], y[2]}, force(t));
    return State{r.dx, r.dv, r.dsigma};
  };
  const auto sol =
      rkf45_integrate<3>(rhs, t0, State{init.x, init.v, init.sigma}, t1, cfg, options.extra_times, options.window);
  Trajectory tr;
  tr.stats = sol.stats;
  tr.samples.reserve(sol.samples.size());
  for (const auto& s : sol.samples) {
    TrajectorySample ts;
    ts.t = s.t;
    ts.state = {s.y[0], s.y[1], s.y[2]};
    ts.force = force(s.t);
    ts.rate = {s.dy[1], s.dy[0], s.dy[2]};
    tr.samples.push_back(ts);
  }
  return tr;
}

ForceIdentification solve_force_for_motion(const SpringDashpotModel& model, const SmoothSignal& x_plus, double t1,
                                           const IntegratorConfig& cfg) {
  model.validate();
  if (!x_plus.has_d1() || !x_plus.has_d2()) throw ConfigError("force identification needs x+, x+' and x+''");
  const JumpValues jv = mass_jump_values(model, x_plus);

  using State = std::array<double, 2>;  // f+, sigma+
  auto rhs = [&](double t, const State& y) {
    const double eps = model.strain(x_plus.value(t));
    const double deps = x_plus.d1(t) / model.x_eq;
    return State{model.mass * x_plus.d2(t) + y[1], relax_rhs(model, y[1], eps, deps)};
  };
  const auto sol = rkf45_integrate<2>(rhs, 0.0, State{jv.f0, jv.sigma0}, t1, cfg);

  ForceIdentification out;
  out.g0 = jv.g0;
  out.sigma0 = jv.sigma0;
  out.stats = sol.stats;
  for (const auto& s : sol.samples) {
    out.t.push_back(s.t);
    out.f_plus.push_back(s.y[0]);
    out.sigma_plus.push_back(s.y[1]);
    out.f_plus_rate.push_back(s.dy[0]);
    out.sigma_plus_rate.push_back(s.dy[1]);
  }
  return out;
}

namespace {

// Index of the sample at time t; the diagnostics only query grid points.
std::size_t sample_index(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) throw ConfigError(fmt::format("t = {} is not a sample time", t));
  return static_cast<std::size_t>(it - times.begin());
}

}  // namespace

Lemma1Diagnostics relaxation_lemma1(const SpringDashpotModel& model, const SmoothSignal& eps_plus,
                                    const Trajectory& traj) {
  if (!eps_plus.has_d1()) throw ConfigError("relaxation diagnostics need eps+'");
  const auto times = traj.times();
  auto u_at = [&](std::size_t i) {
    return traj.samples[i].state.sigma - model.parallel_spring.eval(eps_plus.value(times[i]));
  };
  const SmoothSignal f(
      [&](double t) {
        const auto i = sample_index(times, t);
        return model.series_spring.eval(u_at(i)) - eps_plus.value(t);
      },
      [&](double t) {
        const auto i = sample_index(times, t);
        const double deps = eps_plus.d1(t);
        const double du = traj.samples[i].rate.dsigma - model.parallel_spring.deriv(eps_plus.value(t)) * deps;
        return model.series_spring.deriv(u_at(i)) * du - deps;
      });
  const SmoothSignal h([&](double t) { return model.dashpot.eval(u_at(sample_index(times, t))); });
  return lemma1_check(f, SmoothSignal::constant(0.0), h, times);
}

Lemma1Diagnostics force_lemma1(const SpringDashpotModel& model, const SmoothSignal& x_plus,
                               const ForceIdentification& fi) {
  if (!x_plus.has_d1() || !x_plus.has_d2()) throw ConfigError("force diagnostics need x+' and x+''");
  const double m = model.mass;
  const SmoothSignal f([&](double t) { return fi.f_plus[sample_index(fi.t, t)] - m * x_plus.d1(t); },
                       [&](double t) { return fi.f_plus_rate[sample_index(fi.t, t)] - m * x_plus.d2(t); });
  const SmoothSignal g([&](double t) { return fi.g0 - m * (x_plus.value(t) - model.x_eq); });
  const SmoothSignal h([&](double t) { return -fi.sigma_plus[sample_index(fi.t, t)]; });
  return lemma1_check(f, g, h, fi.t);
}

}  // namespace stepresp
