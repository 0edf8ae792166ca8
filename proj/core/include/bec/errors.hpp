#pragma once

#include <stdexcept>
#include <string>

namespace bec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Series or function evaluated at a pole / divergent point.
class DivergenceError : public Error {
public:
  using Error::Error;
};

/// Result not representable in double precision.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Iterative method stopped before meeting its tolerance.
class NonConvergenceError : public Error {
public:
  NonConvergenceError(const std::string& what, double achieved_estimate)
      : Error(what), estimate_(achieved_estimate) {}

  double achieved_estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

/// Integrand or summand returned NaN.
class NanError : public Error {
public:
  using Error::Error;
};

/// Invariant broken inside the library (e.g. a root bracket that cannot fail).
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace bec
