#include "stepresp/constitutive.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "stepresp/errors.hpp"

namespace stepresp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(fmt::format("constitutive parameter {} must be positive and finite, got {}", what, v));
}

constexpr int kCustomValidationPoints = 65;
constexpr int kMaxNewtonIterations = 400;
constexpr int kMaxBracketExpansions = 2000;

}  // namespace

ConstitutiveFn ConstitutiveFn::linear(double k) {
  require_positive(k, "k");
  return ConstitutiveFn(Linear{k});
}

ConstitutiveFn ConstitutiveFn::exp_saturating(double a, double c) {
  require_positive(a, "a");
  require_positive(c, "c");
  return ConstitutiveFn(ExpSaturating{a, c});
}

ConstitutiveFn ConstitutiveFn::cubic_stiffening(double modulus, double gamma) {
  require_positive(modulus, "E");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ConfigError(fmt::format("constitutive parameter gamma must be non-negative, got {}", gamma));
  return ConstitutiveFn(CubicStiffening{modulus, gamma});
}

ConstitutiveFn ConstitutiveFn::custom(std::function<double(double)> value,
                                      std::function<double(double)> derivative,
                                      Interval domain) {
  if (!value || !derivative) throw ConfigError("custom constitutive function needs value and derivative");
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < 0.0 && 0.0 < domain.hi))
    throw ConfigError("custom constitutive domain must be a finite interval containing 0 in its interior");
  if (value(0.0) != 0.0) throw ConfigError("custom constitutive function must satisfy g(0) = 0");
  for (int i = 0; i < kCustomValidationPoints; ++i) {
    const double s = domain.lo + (domain.hi - domain.lo) * i / (kCustomValidationPoints - 1);
    if (!(derivative(s) > 0.0))
      throw ConfigError(fmt::format("custom constitutive function is not strictly increasing at s = {}", s));
  }
  return ConstitutiveFn(Custom{std::move(value), std::move(derivative), domain});
}

ConstitutiveFn::Family ConstitutiveFn::family() const {
  return std::visit(overloaded{
                        [](const Linear&) { return Family::Linear; },
                        [](const ExpSaturating&) { return Family::ExpSaturating; },
                        [](const CubicStiffening&) { return Family::CubicStiffening; },
                        [](const Custom&) { return Family::Custom; },
                    },
                    params_);
}

Interval ConstitutiveFn::domain() const {
  if (const auto* c = std::get_if<Custom>(&params_)) return c->domain;
  return Interval{};
}

Interval ConstitutiveFn::range() const {
  return std::visit(overloaded{
                        [](const Linear&) { return Interval{}; },
                        [](const ExpSaturating& p) {
                          return Interval{-1.0 / (p.a * p.c), std::numeric_limits<double>::infinity()};
                        },
                        [](const CubicStiffening&) { return Interval{}; },
                        [](const Custom& p) { return Interval{p.value(p.domain.lo), p.value(p.domain.hi)}; },
                    },
                    params_);
}

void ConstitutiveFn::check_domain(double s) const {
  if (std::isnan(s)) throw DomainError("constitutive function evaluated at NaN");
  if (const auto* c = std::get_if<Custom>(&params_); c && !c->domain.contains(s))
    throw DomainError(fmt::format("s = {} outside constitutive domain [{}, {}]", s, c->domain.lo, c->domain.hi));
}

double ConstitutiveFn::eval(double s) const {
  check_domain(s);
  return std::visit(overloaded{
                        [s](const Linear& p) { return p.k * s; },
                        [s](const ExpSaturating& p) { return std::expm1(p.a * s) / (p.a * p.c); },
                        [s](const CubicStiffening& p) { return p.modulus * (1.0 + p.gamma * s * s) * s; },
                        [s](const Custom& p) { return p.value(s); },
                    },
                    params_);
}

double ConstitutiveFn::deriv(double s) const {
  check_domain(s);
  return std::visit(overloaded{
                        [](const Linear& p) { return p.k; },
                        [s](const ExpSaturating& p) { return std::exp(p.a * s) / p.c; },
                        [s](const CubicStiffening& p) { return p.modulus * (1.0 + 3.0 * p.gamma * s * s); },
                        [s](const Custom& p) { return p.derivative(s); },
                    },
                    params_);
}

double ConstitutiveFn::inverse(double y) const {
  if (std::isnan(y)) throw RangeError("inverse requested for NaN");
  if (y == 0.0) return 0.0;
  if (const auto* p = as_linear()) return y / p->k;
  if (const auto* p = as_exp()) {
    const double arg = p->a * p->c * y;
    if (!(arg > -1.0))
      throw RangeError(fmt::format("y = {} outside range ({}, inf) of exponential law", y, -1.0 / (p->a * p->c)));
    return std::log1p(arg) / p->a;
  }
  return newton_inverse(y);
}

// Newton iteration from y / g'(0), safeguarded by a bracket [lo, hi] with
// g(lo) <= y <= g(hi) that is grown geometrically from 0 until it encloses y.
double ConstitutiveFn::newton_inverse(double y) const {
  const Interval dom = domain();
  const Interval img = range();
  if (!(y >= img.lo && y <= img.hi))
    throw RangeError(fmt::format("y = {} outside range [{}, {}] of constitutive function", y, img.lo, img.hi));

  const double tol = 1e-12 * std::max(1.0, std::abs(y));
  double start = std::clamp(y / deriv(0.0), dom.lo, dom.hi);

  double lo = 0.0;
  double hi = 0.0;
  if (y > 0.0) {
    hi = start > 0.0 ? start : std::min(dom.hi, 1.0);
    for (int i = 0; eval(hi) < y; ++i) {
      if (hi >= dom.hi || i > kMaxBracketExpansions)
        throw RangeError(fmt::format("could not bracket g(s) = {}", y));
      lo = hi;
      hi = std::min(dom.hi, 2.0 * hi);
    }
  } else {
    lo = start < 0.0 ? start : std::max(dom.lo, -1.0);
    for (int i = 0; eval(lo) > y; ++i) {
      if (lo <= dom.lo || i > kMaxBracketExpansions)
        throw RangeError(fmt::format("could not bracket g(s) = {}", y));
      hi = lo;
      lo = std::max(dom.lo, 2.0 * lo);
    }
  }

  double s = std::clamp(start, lo, hi);
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    const double r = eval(s) - y;
    if (std::abs(r) <= tol) return s;
    if (r < 0.0)
      lo = s;
    else
      hi = s;
    const double d = deriv(s);
    double next = s - r / d;
    if (!(d > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s) break;
    s = next;
  }
  const double r = eval(s) - y;
  if (std::abs(r) <= tol) return s;
  throw NumericalError(fmt::format("inverse did not converge for y = {} (residual {})", y, r));
}

std::string ConstitutiveFn::describe() const {
  return std::visit(overloaded{
                        [](const Linear& p) { return fmt::format("linear(k={})", p.k); },
                        [](const ExpSaturating& p) { return fmt::format("exp(a={}, c={})", p.a, p.c); },
                        [](const CubicStiffening& p) { return fmt::format("cubic(E={}, gamma={})", p.modulus, p.gamma); },
                        [](const Custom& p) { return fmt::format("custom([{}, {}])", p.domain.lo, p.domain.hi); },
                    },
                    params_);
}

void SpringDashpotModel::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError(fmt::format("mass must be positive, got {}", mass));
  if (!(x_eq > 0.0) || !std::isfinite(x_eq))
    throw ConfigError(fmt::format("equilibrium length must be positive, got {}", x_eq));
}

}  // namespace stepresp
