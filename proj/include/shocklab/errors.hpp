#pragma once

#include <stdexcept>
#include <string>

namespace shocklab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the validity radius of a model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Degenerate input such as equal shock endpoints.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A numerical solve (profile ODE, inversion) did not produce a valid result.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// The evolved field left the model's validity radius.
class RadiusViolation : public Error {
 public:
  RadiusViolation(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Non-finite values appeared during time stepping.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Non-finite integrand while evaluating a functional.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Input to a lemma check violates the lemma's hypotheses.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace shocklab
