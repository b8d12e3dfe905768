#pragma once

#include <stdexcept>
#include <string>

namespace antisym {

/// Invalid input shape or configuration (bad dimension, out-of-range parameter,
/// malformed config). The CLI maps this to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition is not met (divergent norm, non-antisymmetric data
/// passed to an antisymmetric route, evaluation point outside the trusted region).
/// The CLI maps this to exit status 1.
class NumericalRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of budget before meeting its tolerance.
/// Carries the best estimate and its error bound.
class QuadratureError : public NumericalRejection {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : NumericalRejection(what + " (estimate " + std::to_string(estimate) +
                           ", error bound " + std::to_string(error) + ")"),
        estimate_(estimate),
        error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace antisym
