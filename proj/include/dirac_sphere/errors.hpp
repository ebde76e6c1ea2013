#pragma once

#include <stdexcept>
#include <string>

namespace dirac_sphere {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of a rational gauge profile or potential.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Parameters do not satisfy the coefficient constraints of a closed form.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// a1^2 == a2^2 (equivalently alpha*beta == 0) or a1 == 0.
class DegenerateParametersError : public Error {
 public:
  using Error::Error;
};

/// A closed-form exponent would be complex (C1 >= 1/2).
class ComplexExponentError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

/// Sign branch of the (alpha, beta) relation yields an inadmissible pair.
class InvalidBranchError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its panel budget. Carries the partial sum.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double partial, double error_estimate)
      : Error(what), partial_(partial), error_estimate_(error_estimate) {}
  double partial() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

/// Potential has a pole inside the discretization window.
class SingularPotentialError : public Error {
 public:
  SingularPotentialError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Partner component requested at E = 0.
class ZeroModeError : public Error {
 public:
  using Error::Error;
};

}  // namespace dirac_sphere
