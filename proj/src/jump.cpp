#include "stepresp/jump.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "stepresp/errors.hpp"

namespace stepresp {

double strain_jump_residual(const SpringDashpotModel& model, double sigma0, double eps_jp) {
  return model.series_spring.eval(sigma0 - model.parallel_spring.eval(eps_jp)) - eps_jp;
}

double strain_jump_stress(const SpringDashpotModel& model, double eps_jp) {
  const double sigma0 = model.series_spring.inverse(eps_jp) + model.parallel_spring.eval(eps_jp);
  const double residual = strain_jump_residual(model, sigma0, eps_jp);
  if (!(std::abs(residual) <= 1e-10 * std::max(1.0, std::abs(eps_jp))))
    throw NumericalError(fmt::format("jump stress {} violates the jump condition (residual {})", sigma0, residual));
  return sigma0;
}

JumpValues mass_jump_values(const SpringDashpotModel& model, const SmoothSignal& x_plus) {
  if (!x_plus.has_d1()) throw ConfigError("mass jump values need the first derivative of x+");
  JumpValues jv;
  const double x0 = x_plus.value(0.0);
  jv.eps_jp = model.strain(x0);
  jv.f0 = model.mass * x_plus.d1(0.0);
  jv.g0 = model.mass * (x0 - model.x_eq);
  jv.sigma0 = strain_jump_stress(model, jv.eps_jp);
  return jv;
}

namespace {

// Second-order derivative of sampled values on a non-uniform grid.
double grid_derivative(std::span<const double> t, std::span<const double> y, std::size_t i) {
  const std::size_t n = t.size();
  if (n == 2) return (y[1] - y[0]) / (t[1] - t[0]);
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    // derivative at `at` of the parabola through (t_a, y_a), (t_b, y_b), (t_c, y_c)
    const double la = ((at - t[b]) + (at - t[c])) / ((t[a] - t[b]) * (t[a] - t[c]));
    const double lb = ((at - t[a]) + (at - t[c])) / ((t[b] - t[a]) * (t[b] - t[c]));
    const double lc = ((at - t[a]) + (at - t[b])) / ((t[c] - t[a]) * (t[c] - t[b]));
    return la * y[a] + lb * y[b] + lc * y[c];
  };
  if (i == 0) return three_point(0, 1, 2, t[0]);
  if (i == n - 1) return three_point(n - 3, n - 2, n - 1, t[n - 1]);
  return three_point(i - 1, i, i + 1, t[i]);
}

}  // namespace

Lemma1Diagnostics lemma1_check(const SmoothSignal& f, const SmoothSignal& g, const SmoothSignal& h,
                               std::span<const double> grid) {
  Lemma1Diagnostics d;
  if (grid.empty()) return d;
  d.f_at_0 = std::abs(f.value(grid.front()));
  d.g_at_0 = std::abs(g.value(grid.front()));

  std::vector<double> fv;
  if (!f.has_d1()) {
    if (grid.size() < 2) throw ConfigError("lemma check without analytic derivative needs at least two grid points");
    fv.reserve(grid.size());
    for (double t : grid) fv.push_back(f.value(t));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double df = f.has_d1() ? f.d1(grid[i]) : grid_derivative(grid, fv, i);
    d.max_ode_residual = std::max(d.max_ode_residual, std::abs(h.value(grid[i]) + df));
  }
  return d;
}

}  // namespace stepresp
