#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "stepresp/errors.hpp"

namespace stepresp {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double h_init = 1e-6;
  double h_min = 1e-14;
  double h_max = 1e-2;
  double dense_output_dt = 1e-3;
  /// false: fixed steps of h_init, no error control (used for order studies).
  bool adaptive = true;
  std::size_t max_steps = 50'000'000;

  /// Throws ConfigError unless tolerances > 0 and h_min <= h_init <= h_max.
  void validate() const;
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  double max_error_estimate = 0.0;  // largest weighted RMS error of an accepted step
};

/// Caps the step size on [t0, until). Used to resolve a forcing transition.
struct StepWindow {
  double until = -std::numeric_limits<double>::infinity();
  double h_max = std::numeric_limits<double>::infinity();
};

template <std::size_t N>
struct DenseSample {
  double t;
  std::array<double, N> y;
  std::array<double, N> dy;  // right-hand side at (t, y)
};

template <std::size_t N>
struct OdeSolution {
  std::vector<DenseSample<N>> samples;
  IntegratorStats stats;
};

/// Output grid t0, t0 + dt, ..., t1 merged with `extra` times inside [t0, t1].
std::vector<double> output_times(double t0, double t1, double dt, std::span<const double> extra);

namespace detail {

// Fehlberg 4(5) tableau.
inline constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
inline constexpr double a21 = 1.0 / 4;
inline constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
inline constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
inline constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
inline constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104, a65 = -11.0 / 40;
// fifth-order weights (b2 = 0)
inline constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430, b5 = -9.0 / 50, b6 = 2.0 / 55;
// fifth minus fourth order weights
inline constexpr double e1 = 1.0 / 360, e3 = -128.0 / 4275, e4 = -2197.0 / 75240, e5 = 1.0 / 50, e6 = 2.0 / 55;

inline constexpr double kSafety = 0.9;
inline constexpr double kAlpha = 0.7 / 5.0;
inline constexpr double kBeta = 0.4 / 5.0;
inline constexpr double kMinFactor = 0.2;
inline constexpr double kMaxFactor = 5.0;

template <std::size_t N>
bool all_finite(const std::array<double, N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace detail

/// Adaptive Runge-Kutta-Fehlberg 4(5) for y' = rhs(t, y) on [t0, t1].
///
/// The fifth-order solution is propagated; the embedded fourth-order one
/// only drives the error estimate. Error norm is the weighted RMS with weights
/// abs_tol + rel_tol max(|y_n|, |y_{n+1}|), step control is PI. Samples on the
/// output grid come from cubic Hermite interpolation of accepted steps.
///
/// Throws StiffnessError if the step falls below h_min, DomainError (with the
/// offending time) if the right-hand side keeps leaving its domain.
template <std::size_t N, class Rhs>
OdeSolution<N> rkf45_integrate(Rhs&& rhs, double t0, const std::array<double, N>& y0, double t1,
                               const IntegratorConfig& cfg, std::span<const double> extra_times = {},
                               StepWindow window = {}) {
  using State = std::array<double, N>;
  using namespace detail;
  cfg.validate();
  if (!(t1 > t0)) throw ConfigError(fmt::format("empty time span [{}, {}]", t0, t1));
  if (!all_finite(y0)) throw NumericalError("non-finite initial state");

  OdeSolution<N> sol;
  auto& stats = sol.stats;
  const std::vector<double> out = output_times(t0, t1, cfg.dense_output_dt, extra_times);
  sol.samples.reserve(out.size());

  auto eval = [&](double t, const State& y) {
    ++stats.rhs_evals;
    return rhs(t, y);
  };
  auto combine = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = y;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [w, k] : terms) acc += w * (*k)[i];
      r[i] += h * acc;
    }
    return r;
  };

  double t = t0;
  State y = y0;
  State f = eval(t, y);
  std::size_t next_out = 0;
  auto emit = [&](double to, const State& yo) { sol.samples.push_back({to, yo, eval(to, yo)}); };
  if (!out.empty() && out.front() == t0) {
    sol.samples.push_back({t0, y0, f});
    ++next_out;
  }

  const double span = t1 - t0;
  double h = std::min(cfg.h_init, cfg.h_max);
  double err_prev = 1e-4;
  std::size_t steps = 0;

  while (t < t1) {
    if (++steps > cfg.max_steps) throw NumericalError(fmt::format("step budget exhausted at t = {}", t));
    double h_cap = cfg.h_max;
    if (t < window.until) h_cap = std::min(h_cap, window.h_max);
    h = std::min(h, h_cap);
    bool last = false;
    if (t + h >= t1 || (t1 - (t + h)) <= 1e-14 * span) {
      h = t1 - t;
      last = true;
    }

    State k2, k3, k4, k5, k6, y_new;
    bool stage_ok = true;
    std::optional<std::string> domain_failure;
    try {
      k2 = eval(t + c2 * h, combine(y, h, {{a21, &f}}));
      k3 = eval(t + c3 * h, combine(y, h, {{a31, &f}, {a32, &k2}}));
      k4 = eval(t + c4 * h, combine(y, h, {{a41, &f}, {a42, &k2}, {a43, &k3}}));
      k5 = eval(t + c5 * h, combine(y, h, {{a51, &f}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      k6 = eval(t + c6 * h, combine(y, h, {{a61, &f}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      y_new = combine(y, h, {{b1, &f}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      stage_ok = all_finite(y_new);
    } catch (const DomainError& e) {
      stage_ok = false;
      domain_failure = e.what();
    }

    double err = std::numeric_limits<double>::infinity();
    if (stage_ok) {
      double acc = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double est = h * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
        const double w = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        acc += (est / w) * (est / w);
      }
      err = std::sqrt(acc / static_cast<double>(N));
    }

    if (!cfg.adaptive) {
      if (!stage_ok) {
        if (domain_failure) throw DomainError(fmt::format("{} (at t = {})", *domain_failure, t));
        throw NumericalError(fmt::format("non-finite state at t = {}", t));
      }
      err = 0.0;
    }

    if (err <= 1.0 || !cfg.adaptive) {
      State f_new;
      try {
        f_new = eval(last ? t1 : t + h, y_new);
      } catch (const DomainError& e) {
        throw DomainError(fmt::format("{} (at t = {})", e.what(), t + h));
      }
      const double t_new = last ? t1 : t + h;
      while (next_out < out.size() && out[next_out] <= t_new) {
        const double to = out[next_out];
        const double th = (to - t) / h;
        const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
        const double h10 = th * (1 - th) * (1 - th);
        const double h01 = th * th * (3 - 2 * th);
        const double h11 = th * th * (th - 1);
        State yo;
        for (std::size_t i = 0; i < N; ++i)
          yo[i] = h00 * y[i] + h10 * h * f[i] + h01 * y_new[i] + h11 * h * f_new[i];
        if (to == t_new)
          sol.samples.push_back({to, y_new, f_new});
        else
          emit(to, yo);
        ++next_out;
      }
      ++stats.accepted;
      if (cfg.adaptive) stats.max_error_estimate = std::max(stats.max_error_estimate, err);
      t = t_new;
      y = y_new;
      f = f_new;
      if (!cfg.adaptive) {
        h = cfg.h_init;
        continue;
      }
      double fac = err == 0.0 ? kMaxFactor
                              : kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
      fac = std::clamp(fac, kMinFactor, kMaxFactor);
      err_prev = std::max(err, 1e-4);
      h *= fac;
    } else {
      ++stats.rejected;
      const double fac = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -1.0 / 5.0)) : 0.5;
      h *= std::min(fac, 0.9);
      if (h < cfg.h_min) {
        if (domain_failure) throw DomainError(fmt::format("{} (at t = {})", *domain_failure, t));
        throw StiffnessError(fmt::format("step size {} fell below h_min = {} at t = {} (error estimate {})", h,
                                         cfg.h_min, t, err),
                             t, h);
      }
    }
  }
  return sol;
}

}  // namespace stepresp
