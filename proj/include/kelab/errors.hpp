#pragma once

#include <stdexcept>
#include <string>

namespace kelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A function value at some evaluation (or stencil) point was not finite.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// The Levi form of a potential failed to be positive definite.
class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

class MembershipError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPointError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDomainError : public Error {
 public:
  using Error::Error;
};

/// Two potentials target different Ricci constants.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class NotEinsteinError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A flow trajectory left the domain before the requested time.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double exit_time)
      : Error(what), exit_time_(exit_time) {}
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

class BracketingError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kelab
