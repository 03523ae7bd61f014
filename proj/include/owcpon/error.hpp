#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace owcpon {

enum class ErrorCode {
  SpecMismatch,
  BadAdjacency,
  MissingCatalogEntry,
  MissingOlt,
  ZeroBaseline,
  NoRoute,
  PolicyExcluded,
  UnknownRack,
  UnknownServer,
  ParseError,
  UnknownKey,
  InvalidValue,
  ValidationFailed,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the toolkit; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// Scenario parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace owcpon
