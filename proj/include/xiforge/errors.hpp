#pragma once

#include <stdexcept>
#include <string>

namespace xiforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function or identity.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole. `location` names the offending point.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::string location)
      : DomainError(what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// An iterative method or truncation failed to reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity violated an identity that must hold by construction.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Coefficient table too short for the requested truncation.
class InsufficientCoefficients : public Error {
 public:
  InsufficientCoefficients(const std::string& what, long required_n_max)
      : Error(what), required_n_max_(required_n_max) {}
  long required_n_max() const { return required_n_max_; }

 private:
  long required_n_max_;
};

/// Unknown identity, suite or function name, or malformed parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace xiforge
