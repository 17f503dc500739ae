#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace azcoh {

enum class ErrorKind {
  NotSquare,
  NonHermitian,
  NotPSD,
  TraceNotOne,
  NegativeEigenvalue,
  EmptySupport,
  InvalidParams,
  InvalidAlpha,
  DimensionMismatch,
  DimensionTooLarge,
  NotTracePreserving,
  NotPure,
  NumericFailure,
  BadInput,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NumericFailure: return "NumericFailure";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace azcoh
