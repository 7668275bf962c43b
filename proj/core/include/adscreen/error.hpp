#pragma once

#include <stdexcept>
#include <string>

namespace adscreen {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad fraction, k too large, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input files or tables are malformed, inconsistent, or violate a schema.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: divergence, singularity, undefined metric.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Why a lexical metric could not be evaluated on a text.
enum class MetricFailure {
  domain,      // text too short for the formula (N < 1, N < 2, ...)
  singular,    // division by zero inside the formula
  short_text,  // fewer tokens than a required sample/segment size
  undefined,   // the quantity never became defined (no completed MTLD factor)
};

class MetricError : public NumericalError {
 public:
  MetricError(MetricFailure failure, const std::string& what)
      : NumericalError(what), failure_(failure) {}

  [[nodiscard]] MetricFailure failure() const noexcept { return failure_; }

 private:
  MetricFailure failure_;
};

}  // namespace adscreen
