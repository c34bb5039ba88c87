#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

/// Failure categories surfaced by the library. The C API maps each kind to a
/// status code; the CLI maps status codes to process exit codes.
enum class ErrorKind {
  NonZeroMean,
  EpsOutOfRange,
  BadParams,
  CflViolation,
  BadWindow,
  BadSeries,
  Infeasible,
  EmptyTrajectory,
  ConfigParse,
  ConfigMismatch,
  IoError,
  ChecksumMismatch,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a step would exceed the advective CFL limit.
class CflError : public Error {
 public:
  CflError(double ratio, double limit);
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

/// Raised by series validation; `index` is the first offending sample.
class SeriesError : public Error {
 public:
  SeriesError(std::size_t index, const std::string& what)
      : Error(ErrorKind::BadSeries, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace tcm
