#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfin {

/// Stable error codes. The CLI prints the name returned by `to_string`, so
/// existing names must not change.
enum class ErrorCode {
  NotAGroup,
  NotAnLGroup,
  NotAPrime,
  DimensionMismatch,
  NotAUnit,
  InvalidModule,
  InvalidMap,
  BoundarySquareNonzero,
  GroupMismatch,
  UnboundedHomology,
  MaxDegree,
  NotPerfect,
  HorizonExhausted,
  NotExactIntegrally,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lfin
