#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tighthilb {

enum class ErrorCode {
  DivisionByZero,
  ArityError,
  DomainError,
  NotPrime,
  NotMPrimary,
  NoStableWindow,
  DimViolation,
  BudgetExhausted,
  SyntaxError,
  UndefinedIdentifier,
  CharacteristicMismatch,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotMPrimary: return "NOT_M_PRIMARY";
    case ErrorCode::NoStableWindow: return "NO_STABLE_WINDOW";
    case ErrorCode::DimViolation: return "DIM_VIOLATION";
    case ErrorCode::BudgetExhausted: return "BUDGET_EXHAUSTED";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndefinedIdentifier: return "UndefinedIdentifier";
    case ErrorCode::CharacteristicMismatch: return "CharacteristicMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tighthilb
