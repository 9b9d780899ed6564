#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "stepresp/constitutive.hpp"
#include "stepresp/errors.hpp"

using stepresp::ConstitutiveFn;
using namespace fixtures;

namespace {

std::vector<ConstitutiveFn> builtin_laws() {
  return {ConstitutiveFn::linear(2.0),
          ConstitutiveFn::exp_saturating(kSqrt3, 11.0),
          ConstitutiveFn::exp_saturating(kSqrt3, 0.1),
          ConstitutiveFn::cubic_stiffening(3.0, 5.0),
          ConstitutiveFn::cubic_stiffening(3.0, 0.0)};
}

ConstitutiveFn sinh_law() {
  return ConstitutiveFn::custom([](double s) { return std::sinh(s); }, [](double s) { return std::cosh(s); },
                                {-4.0, 4.0});
}

}  // namespace

TEST_CASE("eval matches the family formulas") {
  CHECK(ConstitutiveFn::exp_saturating(kSqrt3, 11.0).eval(0.0) == 0.0);
  CHECK(ConstitutiveFn::cubic_stiffening(3.0, 5.0).eval(kEpsJump) == doctest::Approx(kParallelAtJump).epsilon(1e-14));
  const double mu1 = 0.1;
  CHECK(ConstitutiveFn::linear(1.0 / mu1).eval(mu1) == doctest::Approx(1.0).epsilon(1e-15));
  // (exp(a s) - 1)/(a c)
  CHECK(ConstitutiveFn::exp_saturating(2.0, 0.5).eval(0.75) == doctest::Approx(std::expm1(1.5) / 1.0));
}

TEST_CASE("deriv at zero and against central differences") {
  CHECK(ConstitutiveFn::exp_saturating(kSqrt3, 11.0).deriv(0.0) == doctest::Approx(1.0 / 11.0));
  CHECK(ConstitutiveFn::cubic_stiffening(3.0, 5.0).deriv(0.0) == doctest::Approx(3.0));

  auto laws = builtin_laws();
  laws.push_back(sinh_law());
  for (const auto& g : laws) {
    for (double s : {0.05, 0.4, 1.3, 2.7}) {
      const double h = 1e-5 * std::max(1.0, s);
      const double fd = (g.eval(s + h) - g.eval(s - h)) / (2 * h);
      INFO(g.describe(), " s=", s);
      CHECK(std::abs(g.deriv(s) - fd) <= 1e-6 * std::abs(fd));
    }
  }
}

TEST_CASE("inverse closed forms and zero") {
  const auto g2 = ConstitutiveFn::exp_saturating(kSqrt3, 11.0);
  CHECK(g2.inverse(kEpsJump) == doctest::Approx(kSeriesInverseAtJump).epsilon(1e-14));
  CHECK(ConstitutiveFn::linear(2.0).inverse(3.0) == 1.5);
  for (const auto& g : builtin_laws()) CHECK(g.inverse(0.0) == 0.0);
  CHECK(sinh_law().inverse(0.0) == 0.0);
}

TEST_CASE("exponential inverse agrees with a Newton solve") {
  const auto g2 = ConstitutiveFn::exp_saturating(kSqrt3, 11.0);
  const auto as_custom = ConstitutiveFn::custom([&](double s) { return g2.eval(s); },
                                                [&](double s) { return g2.deriv(s); }, {-5.0, 5.0});
  CHECK(as_custom.inverse(kEpsJump) == doctest::Approx(g2.inverse(kEpsJump)).epsilon(1e-12));
}

TEST_CASE("cubic inverse meets the residual tolerance far from the origin") {
  const auto g3 = ConstitutiveFn::cubic_stiffening(3.0, 5.0);
  for (double y : {-1e6, -12.5, -1e-9, 1e-9, 0.3, 2.308, 1e3, 1e8}) {
    const double s = g3.inverse(y);
    CHECK(std::abs(g3.eval(s) - y) <= 1e-12 * std::max(1.0, std::abs(y)));
  }
}

TEST_CASE("round trip and monotonicity over sampled arguments") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> wide(-10.0, 10.0);
  std::uniform_real_distribution<double> narrow(-3.9, 3.9);
  auto laws = builtin_laws();
  for (const auto& g : laws) {
    double worst = 0.0;
    bool increasing = true;
    for (int i = 0; i < 1000; ++i) {
      const double s = wide(rng);
      worst = std::max(worst, std::abs(g.inverse(g.eval(s)) - s) / std::max(1.0, std::abs(s)));
      increasing = increasing && g.deriv(s) > 0.0;
    }
    INFO(g.describe());
    CHECK(worst <= 1e-9);
    CHECK(increasing);
  }
  const auto custom = sinh_law();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = narrow(rng);
    worst = std::max(worst, std::abs(custom.inverse(custom.eval(s)) - s) / std::max(1.0, std::abs(s)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("composition with an exact step value") {
  // g(s H) = g(s) H for H in {0, 1}
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (const auto& g : builtin_laws()) {
    for (int i = 0; i < 100; ++i) {
      const double s = dist(rng);
      for (double step : {0.0, 1.0}) CHECK(g.eval(s * step) == g.eval(s) * step);
    }
  }
}

TEST_CASE("exponential law tends to the linear law as the exponent vanishes") {
  const double c = 11.0;
  const auto g = ConstitutiveFn::exp_saturating(1e-8, c);
  for (double s = -10.0; s <= 10.0; s += 0.25) CHECK(std::abs(g.eval(s) - s / c) <= 1e-6);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ConstitutiveFn::linear(0.0), stepresp::ConfigError);
  CHECK_THROWS_AS(ConstitutiveFn::exp_saturating(-1.0, 1.0), stepresp::ConfigError);
  CHECK_THROWS_AS(ConstitutiveFn::exp_saturating(1.0, 0.0), stepresp::ConfigError);
  CHECK_THROWS_AS(ConstitutiveFn::cubic_stiffening(0.0, 1.0), stepresp::ConfigError);
  CHECK_THROWS_AS(ConstitutiveFn::cubic_stiffening(1.0, -0.1), stepresp::ConfigError);
  CHECK_NOTHROW(ConstitutiveFn::cubic_stiffening(1.0, 0.0));
  // g(0) != 0
  CHECK_THROWS_AS(ConstitutiveFn::custom([](double s) { return s + 1.0; }, [](double) { return 1.0; }, {-1.0, 1.0}),
                  stepresp::ConfigError);
  // not increasing
  CHECK_THROWS_AS(ConstitutiveFn::custom([](double s) { return s * s * s; }, [](double s) { return 3 * s * s; },
                                         {-1.0, 1.0}),
                  stepresp::ConfigError);
  // unbounded domain
  CHECK_THROWS_AS(ConstitutiveFn::custom([](double s) { return s; }, [](double) { return 1.0; }, {}),
                  stepresp::ConfigError);
}

TEST_CASE("domain and range errors") {
  const auto custom = sinh_law();
  CHECK_THROWS_AS(custom.eval(4.5), stepresp::DomainError);
  CHECK_THROWS_AS(custom.deriv(-4.5), stepresp::DomainError);
  CHECK_THROWS_AS(custom.inverse(std::sinh(4.0) * 1.01), stepresp::RangeError);

  // exponential law is bounded below by -1/(a c)
  const auto g = ConstitutiveFn::exp_saturating(2.0, 0.5);
  CHECK(g.range().lo == doctest::Approx(-1.0));
  CHECK_THROWS_AS(g.inverse(-1.0), stepresp::RangeError);
  CHECK_THROWS_AS(g.inverse(-3.0), stepresp::RangeError);
  CHECK(g.inverse(-0.999) < 0.0);
}
