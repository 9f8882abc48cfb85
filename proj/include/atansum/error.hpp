// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atansum {

enum class ErrorCode {
  BothZero,
  DenominatorZero,
  Indeterminate,
  NeverMonotone,
  NotInMonotoneRegime,
  SurdNotReducible,
  SyntaxError,
  SchemaError,
  ParseError,
  ConstraintViolation,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::NeverMonotone: return "NeverMonotone";
    case ErrorCode::NotInMonotoneRegime: return "NotInMonotoneRegime";
    case ErrorCode::SurdNotReducible: return "SurdNotReducible";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parser failures also report the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace atansum
