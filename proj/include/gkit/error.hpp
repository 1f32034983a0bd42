#pragma once

#include <stdexcept>
#include <string>

namespace gkit {

// Machine-readable error categories. The string form (error_code_name) is
// what the CLI emits in its JSON error objects.
enum class ErrorCode {
  DivisionByZero,
  NotAUnit,
  NotAPthPower,
  NotSeparable,
  IndexOutOfRange,
  LengthMismatch,
  LevelMismatch,
  NotInCohen,
  NotInImage,
  NotEisenstein,
  UnsupportedAlgebra,
  UnsupportedBase,
  NotASolution,
  ResourceLimit,
  LevelTooLow,
  NotInTargetFiltration,
  ParseError,
  UnknownIdentifier,
  TypeMismatch,
  InvalidArgument,
  InternalError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position and what the parser wanted.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string expected, const std::string& message)
      : Error(ErrorCode::ParseError, message),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// Internal invariant check; a failure signals a bug, not bad input.
inline void check_internal(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::InternalError, what);
}

}  // namespace gkit
