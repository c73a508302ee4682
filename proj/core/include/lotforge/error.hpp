#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lotforge {

enum class ErrorKind {
  Dimension,   // lot dimensions out of range
  Pose,        // rotation/scale/position invalid
  Placement,   // footprint does not touch the lot
  Catalog,     // unknown catalog entry
  NotFound,    // unknown instance, scenario, pattern or stored record
  Parse,       // malformed document or CSV
  Version,     // unsupported format_version
  Integrity,   // dangling catalog reference or corrupt store log
  DuplicateId,
  Affordance,  // element lacks the affordance an operation needs
  Ingestion,   // survey row violates the ratings schema
  MissingData, // aggregation group has no data
  Config,
  Conflict,
  Validation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Parse failure with a 1-based line/column into the offending text.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::Parse, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Survey ingestion failure; row is the 1-based line in the source CSV.
class RowError : public Error {
public:
  RowError(ErrorKind kind, const std::string& message, std::size_t row)
      : Error(kind, message), row_(row) {}

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

}  // namespace lotforge
