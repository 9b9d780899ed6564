#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>

namespace stepresp {

/// Closed interval; infinite bounds mean unbounded.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double s) const { return s >= lo && s <= hi; }
};

/// Scalar constitutive function g with g(0) = 0, strictly increasing on its
/// domain. Used both for the strain-of-stress form (springs in series,
/// dashpots) and for the stress-of-strain form (parallel spring).
///
/// Families:
///   Linear           g(s) = k s
///   ExpSaturating    g(s) = (exp(a s) - 1) / (a c)
///   CubicStiffening  g(s) = E (1 + gamma s^2) s
///   Custom           user callables on a finite interval
///
/// Instances are immutable; all members are safe to call concurrently.
class ConstitutiveFn {
 public:
  enum class Family { Linear, ExpSaturating, CubicStiffening, Custom };

  struct Linear {
    double k;
  };
  struct ExpSaturating {
    double a;
    double c;
  };
  struct CubicStiffening {
    double modulus;
    double gamma;
  };
  struct Custom {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    Interval domain;
  };

  static ConstitutiveFn linear(double k);
  static ConstitutiveFn exp_saturating(double a, double c);
  static ConstitutiveFn cubic_stiffening(double modulus, double gamma);
  /// Validates g(0) == 0 and g' > 0 at sample points of the finite domain.
  static ConstitutiveFn custom(std::function<double(double)> value,
                               std::function<double(double)> derivative,
                               Interval domain);

  Family family() const;
  const Linear* as_linear() const { return std::get_if<Linear>(&params_); }
  const ExpSaturating* as_exp() const { return std::get_if<ExpSaturating>(&params_); }
  const CubicStiffening* as_cubic() const { return std::get_if<CubicStiffening>(&params_); }

  Interval domain() const;
  /// Image of the domain under g (open ends reported as their limits).
  Interval range() const;

  double eval(double s) const;
  double deriv(double s) const;
  /// Solves g(s) = y. Closed form for Linear and ExpSaturating, safeguarded
  /// Newton otherwise. Throws RangeError if y is not attained, NumericalError
  /// if the iteration does not reach |g(s) - y| <= 1e-12 max(1, |y|).
  double inverse(double y) const;

  std::string describe() const;

 private:
  using Params = std::variant<Linear, ExpSaturating, CubicStiffening, Custom>;
  explicit ConstitutiveFn(Params p) : params_(std::move(p)) {}

  void check_domain(double s) const;
  double newton_inverse(double y) const;

  Params params_;
};

/// Nonlinear standard solid with an attached mass:
/// a dashpot (d eps1/dt = g1(sigma1)) in series with a spring
/// (eps2 = g2(sigma2)), both in parallel with a spring (sigma3 = g3(eps3)).
struct SpringDashpotModel {
  ConstitutiveFn dashpot = ConstitutiveFn::linear(1.0);          // g1
  ConstitutiveFn series_spring = ConstitutiveFn::linear(1.0);    // g2
  ConstitutiveFn parallel_spring = ConstitutiveFn::linear(1.0);  // g3
  double mass = 1.0;
  double x_eq = 1.0;

  /// Throws ConfigError for non-positive mass or equilibrium length.
  void validate() const;

  double strain(double x) const { return (x - x_eq) / x_eq; }
};

}  // namespace stepresp
