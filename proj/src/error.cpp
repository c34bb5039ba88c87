#include "tcm/error.hpp"

#include <cstdio>

namespace tcm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::BadWindow: return "BadWindow";
    case ErrorKind::BadSeries: return "BadSeries";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::Internal: return "Internal";
  }
  return "Internal";
}

static std::string cfl_message(double ratio, double limit) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "CFL ratio %.6g exceeds limit %.6g", ratio,
                limit);
  return buf;
}

CflError::CflError(double ratio, double limit)
    : Error(ErrorKind::CflViolation, cfl_message(ratio, limit)),
      ratio_(ratio) {}

}  // namespace tcm
