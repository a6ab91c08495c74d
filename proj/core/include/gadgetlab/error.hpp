#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gadgetlab {

/// Machine-readable failure category. The CLI prints these verbatim.
enum class ErrorCode {
  invalid_argument,
  parse_error,
  language_mismatch,
  out_of_range,
  budget_exceeded,
  horizon_exhausted,
  io_error,
  check_failed,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error in a structure file or formula. `line` is 1-based (0 when the
/// input is a single line), `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  /// Same location, message prefixed by `source` (typically a file path).
  ParseError in_source(const std::string& source) const;

 private:
  struct Raw {};
  ParseError(Raw, const std::string& full_message, std::size_t line, std::size_t column);

  std::size_t line_;
  std::size_t column_;
};

/// Raised when an exhaustive search or enumeration would exceed its budget.
/// Distinct from a negative answer.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what);
};

}  // namespace gadgetlab
