#pragma once

#include <stdexcept>
#include <string>

namespace gop {

enum class ErrorCode {
  NonpositiveBeta,
  NonpositiveExponent,
  InvalidInput,
  ContextMismatch,
  ZeroCovector,
  FamilyMismatch,
  KindMismatch,
  NonmonotoneSchedule,
  DivergentTail,
  NoBoundAvailable,
  ContourThroughZero,
  NewtonDivergence,
  ConfigError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonpositiveBeta: return "NonpositiveBeta";
    case ErrorCode::NonpositiveExponent: return "NonpositiveExponent";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ZeroCovector: return "ZeroCovector";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NonmonotoneSchedule: return "NonmonotoneSchedule";
    case ErrorCode::DivergentTail: return "DivergentTail";
    case ErrorCode::NoBoundAvailable: return "NoBoundAvailable";
    case ErrorCode::ContourThroughZero: return "ContourThroughZero";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace gop
