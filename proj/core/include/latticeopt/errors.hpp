#pragma once

#include <stdexcept>
#include <string>

namespace latticeopt {

/// Base class for all latticeopt errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A raw value vector cannot be turned into a valid solution (non-finite
/// entries, wrong arity).
class InvalidSolution : public Error {
 public:
  using Error::Error;
};

/// Malformed lattice map input (ragged rows, out-of-range fuel types).
class LatticeMapError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a solution failed. Subclassed by the external-evaluator
/// failure modes so callers can catch the whole family at once.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class SpawnFailed : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class Timeout : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class ProtocolError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class EvaluatorReportedError : public EvaluationError {
 public:
  explicit EvaluatorReportedError(const std::string& msg, int exit_status = -1)
      : EvaluationError(msg), exit_status_(exit_status) {}
  int exit_status() const { return exit_status_; }

 private:
  int exit_status_;
};

/// The weight-calibration linear system is rank-deficient.
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

/// A meta-prompt was requested from an empty solution archive.
class EmptyArchive : public Error {
 public:
  using Error::Error;
};

/// Candidate generation failed after exhausting retries.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Authentication was rejected (HTTP 401/403); never retried.
class AuthError : public Error {
 public:
  using Error::Error;
};

/// The replay transcript ran out of stored responses.
class ReplayExhausted : public Error {
 public:
  using Error::Error;
};

/// File-system failure while writing or reading run artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace latticeopt
