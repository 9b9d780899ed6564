#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "stepresp/errors.hpp"
#include "stepresp/rkf45.hpp"

using namespace stepresp;

namespace {

// Linear standard solid after a unit strain jump: sigma' = -k (sigma - E3),
// sigma(0) = E2 + E3, exact sigma = E3 + E2 exp(-k t).
constexpr double kE2 = 11.0, kE3 = 3.0, kRate = 110.0;

auto ssm_rhs = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{-kRate * (y[0] - kE3)}; };
double ssm_exact(double t) { return kE3 + kE2 * std::exp(-kRate * t); }

double fixed_step_error(double h) {
  IntegratorConfig cfg;
  cfg.adaptive = false;
  cfg.h_init = cfg.h_max = h;
  cfg.h_min = h;
  cfg.dense_output_dt = 0.05;
  const auto sol = rkf45_integrate<1>(ssm_rhs, 0.0, {kE2 + kE3}, 0.05, cfg);
  return std::abs(sol.samples.back().y[0] - ssm_exact(0.05));
}

}  // namespace

TEST_CASE("dense output matches the exact solution") {
  IntegratorConfig cfg;
  const auto sol = rkf45_integrate<1>(ssm_rhs, 0.0, {kE2 + kE3}, 0.2, cfg);
  REQUIRE(sol.samples.size() == 201);
  CHECK(sol.samples.front().t == 0.0);
  CHECK(sol.samples.back().t == 0.2);
  double worst = 0.0;
  for (const auto& s : sol.samples) worst = std::max(worst, std::abs(s.y[0] - ssm_exact(s.t)));
  CHECK(worst < 1e-6);
  for (std::size_t i = 1; i < sol.samples.size(); ++i) CHECK(sol.samples[i].t > sol.samples[i - 1].t);
  // stored rates are the right-hand side at the sample
  for (const auto& s : sol.samples) CHECK(s.dy[0] == ssm_rhs(s.t, s.y)[0]);
  CHECK(sol.stats.accepted > 0);
  CHECK(sol.stats.max_error_estimate <= 1.0);
}

TEST_CASE("fixed-step order is at least four") {
  const double e1 = fixed_step_error(0.05 / 8);
  const double e2 = fixed_step_error(0.05 / 16);
  const double e3 = fixed_step_error(0.05 / 32);
  const double p1 = std::log2(e1 / e2);
  const double p2 = std::log2(e2 / e3);
  INFO("orders ", p1, " ", p2);
  CHECK(p1 >= 4.0);
  CHECK(p2 >= 4.0);
}

TEST_CASE("global error falls at fourth order or better in the step count") {
  // three decades of tolerance; order = -d log(error) / d log(steps)
  std::vector<double> log_err, log_steps;
  for (double tol : {1e-5, 1e-6, 1e-7, 1e-8}) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    cfg.h_init = 1e-3;
    const auto sol = rkf45_integrate<1>(ssm_rhs, 0.0, {kE2 + kE3}, 0.1, cfg);
    log_err.push_back(std::log(std::abs(sol.samples.back().y[0] - ssm_exact(0.1))));
    log_steps.push_back(std::log(static_cast<double>(sol.stats.accepted)));
  }
  const double order = -(log_err.back() - log_err.front()) / (log_steps.back() - log_steps.front());
  INFO("observed order ", order);
  CHECK(order >= 4.0);
  for (std::size_t i = 1; i < log_err.size(); ++i) CHECK(log_err[i] < log_err[i - 1]);
}

TEST_CASE("deterministic") {
  IntegratorConfig cfg;
  const auto a = rkf45_integrate<1>(ssm_rhs, 0.0, {14.0}, 0.3, cfg);
  const auto b = rkf45_integrate<1>(ssm_rhs, 0.0, {14.0}, 0.3, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].t == b.samples[i].t);
    CHECK(a.samples[i].y[0] == b.samples[i].y[0]);
  }
  CHECK(a.stats.accepted == b.stats.accepted);
}

TEST_CASE("step size underflow raises a stiffness error") {
  IntegratorConfig cfg;
  cfg.h_min = 1e-6;
  cfg.h_init = 1e-4;
  auto stiff = [](double t, const std::array<double, 1>& y) {
    return std::array<double, 1>{-1e9 * (y[0] - std::cos(t))};
  };
  CHECK_THROWS_AS(rkf45_integrate<1>(stiff, 0.0, {0.0}, 1.0, cfg), StiffnessError);
  try {
    rkf45_integrate<1>(stiff, 0.0, {0.0}, 1.0, cfg);
  } catch (const StiffnessError& e) {
    CHECK(e.step() < cfg.h_min);
    CHECK(e.time() >= 0.0);
  }
}

TEST_CASE("domain violations are reported with the time") {
  auto rhs = [](double t, const std::array<double, 1>&) {
    if (t > 0.5) throw DomainError("left the domain");
    return std::array<double, 1>{1.0};
  };
  IntegratorConfig cfg;
  try {
    rkf45_integrate<1>(rhs, 0.0, {0.0}, 1.0, cfg);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("left the domain") != std::string::npos);
    const auto at = what.find("at t = ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(what.substr(at + 7)) == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("step window caps the step") {
  std::vector<double> times;
  auto rhs = [&](double t, const std::array<double, 1>&) {
    times.push_back(t);
    return std::array<double, 1>{0.0};
  };
  IntegratorConfig cfg;
  cfg.h_max = 0.5;
  cfg.h_init = 0.5;
  rkf45_integrate<1>(rhs, 0.0, {0.0}, 2.0, cfg, {}, StepWindow{1.0, 0.01});
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  double widest = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= 1.0) widest = std::max(widest, times[i] - times[i - 1]);
  CHECK(widest <= 0.01 + 1e-15);
}

TEST_CASE("output grid") {
  const std::array<double, 2> extra{0.0125, 7.0};
  const auto out = output_times(0.0, 0.1, 0.025, extra);
  const std::vector<double> expected{0.0, 0.0125, 0.025, 0.05, 0.075, 0.1};
  REQUIRE(out.size() == expected.size());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  CHECK(out.back() == 0.1);
  // end point not on the grid
  const auto odd = output_times(0.0, 0.105, 0.025, {});
  CHECK(odd.size() == 6);
  CHECK(odd.back() == 0.105);
}

TEST_CASE("config validation") {
  IntegratorConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.h_min = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.h_init = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  CHECK_THROWS_AS(rkf45_integrate<1>(ssm_rhs, 1.0, {0.0}, 1.0, cfg), ConfigError);
}
