#include "lotforge/csv.hpp"

#include "lotforge/error.hpp"

#include <algorithm>

namespace lotforge {

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  std::vector<CsvRow> records;
  CsvRow current;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool in_quotes = false;
  bool row_has_content = false;

  const auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  const auto end_record = [&] {
    if (row_has_content) {
      end_field();
      current.line = record_line;
      records.push_back(std::move(current));
    }
    current = CsvRow{};
    field.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!row_has_content) record_line = line;
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        if (!row_has_content) record_line = line;
        row_has_content = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (!row_has_content) record_line = line;
        row_has_content = true;
        field += c;
    }
  }
  if (in_quotes) throw ParseError("csv: unterminated quoted field", record_line, 1);
  end_record();

  if (records.empty()) throw ParseError("csv: no header row", 1, 1);
  CsvTable table;
  table.header = std::move(records.front().fields);
  for (std::string& h : table.header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
    if (h.size() >= 3 && static_cast<unsigned char>(h[0]) == 0xEF) h.erase(0, 3);  // UTF-8 BOM
  }
  records.erase(records.begin());
  table.rows = std::move(records);
  return table;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace lotforge
