#pragma once

#include <functional>
#include <utility>

namespace stepresp {

/// Smooth scalar function of time with optional analytic derivatives.
/// Carries the smooth factors of step inputs and responses (strain, position,
/// force parts) for t >= 0+.
class SmoothSignal {
 public:
  using Fn = std::function<double(double)>;

  SmoothSignal() : SmoothSignal(constant(0.0)) {}
  SmoothSignal(Fn value, Fn d1 = {}, Fn d2 = {})
      : value_(std::move(value)), d1_(std::move(d1)), d2_(std::move(d2)) {}

  static SmoothSignal constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
  /// c0 + c1 t
  static SmoothSignal affine(double c0, double c1) {
    return {[c0, c1](double t) { return c0 + c1 * t; }, [c1](double) { return c1; }, [](double) { return 0.0; }};
  }

  double value(double t) const { return value_(t); }
  double d1(double t) const { return d1_(t); }
  double d2(double t) const { return d2_(t); }

  bool has_d1() const { return static_cast<bool>(d1_); }
  bool has_d2() const { return static_cast<bool>(d2_); }

 private:
  Fn value_;
  Fn d1_;
  Fn d2_;
};

}  // namespace stepresp
