#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lotforge {

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index by header name.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
/// breaks. CRLF is accepted. Blank lines are skipped. Throws ParseError on an
/// unterminated quote or an empty input.
CsvTable parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

}  // namespace lotforge
