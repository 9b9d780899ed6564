#pragma once

#include <stdexcept>
#include <string>

namespace stepresp {

/// Invalid user configuration (bad parameters, malformed config file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the declared domain of a constitutive function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Value outside the range of a constitutive function (inverse not defined).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Request outside the regime a closed-form solution covers.
class UnsupportedRegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iteration failed to converge, singular derivative, non-finite state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive step size fell below h_min.
class StiffnessError : public NumericalError {
 public:
  StiffnessError(const std::string& what, double t, double h)
      : NumericalError(what), t_(t), h_(h) {}

  double time() const noexcept { return t_; }
  double step() const noexcept { return h_; }

 private:
  double t_;
  double h_;
};

}  // namespace stepresp
