#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simps {

enum class ErrorKind {
  InvalidInput,
  TooLarge,
  RankZero,
  NonUnique,
  NotProjectivePair,
  UnsupportedBoundary,
  NotNormal,
  NoGauge,
  DegenerateGauge,
  NotInvertible,
  InvalidGeometry,
  NotEigenstate,
  NotInjective,
  NotFound,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Exception type thrown by every library operation. The kind identifies the
/// failure class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::RankZero: return "RankZero";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::NotProjectivePair: return "NotProjectivePair";
    case ErrorKind::UnsupportedBoundary: return "UnsupportedBoundary";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NoGauge: return "NoGauge";
    case ErrorKind::DegenerateGauge: return "DegenerateGauge";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::NotEigenstate: return "NotEigenstate";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace simps
