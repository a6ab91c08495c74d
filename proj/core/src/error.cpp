#include "gadgetlab/error.hpp"

namespace gadgetlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::language_mismatch: return "language_mismatch";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::horizon_exhausted: return "horizon_exhausted";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::check_failed: return "check_failed";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {
std::string locate(const std::string& message, std::size_t line, std::size_t column) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (column > 0) out += "column " + std::to_string(column) + ": ";
  return out + message;
}
}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorCode::parse_error, locate(message, line, column)), line_(line), column_(column) {}

ParseError::ParseError(Raw, const std::string& full_message, std::size_t line, std::size_t column)
    : Error(ErrorCode::parse_error, full_message), line_(line), column_(column) {}

ParseError ParseError::in_source(const std::string& source) const {
  return ParseError(Raw{}, source + ": " + what(), line_, column_);
}

BudgetExceeded::BudgetExceeded(const std::string& what)
    : Error(ErrorCode::budget_exceeded, "budget exceeded: " + what) {}

}  // namespace gadgetlab
