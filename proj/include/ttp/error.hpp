#pragma once

#include <stdexcept>
#include <string>

namespace ttp {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  NoRoot,
  Unsupported,
  ZeroPolynomial,
  AlphabetMismatch,
  NotCompleted,
  CharTwo,
  NotQuadratic,
  SingularN,
  NotCanonical,
  ParseError,
  ConstraintError,
  InvalidArgument,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::NotCompleted: return "NotCompleted";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::NotQuadratic: return "NotQuadratic";
    case ErrorCode::SingularN: return "SingularN";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConstraintError: return "ConstraintError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// carries the machine-checkable kind, `what()` the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ttp
