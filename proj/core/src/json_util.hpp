#pragma once

// Internal helpers for reading JSON documents with positioned errors.

#include "lotforge/error.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace lotforge::detail {

using Json = nlohmann::json;

/// Line/column (1-based) of a byte offset into text.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, offset);
    throw ParseError(std::string(what) + ": malformed JSON at line " + std::to_string(line) +
                         ", column " + std::to_string(col),
                     line, col);
  }
}

[[noreturn]] inline void schema_error(std::string_view what, const std::string& message) {
  throw ParseError(std::string(what) + ": " + message, 0, 0);
}

inline const Json& require(const Json& obj, const char* key, std::string_view what) {
  if (!obj.is_object()) schema_error(what, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(what, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string require_string(const Json& obj, const char* key, std::string_view what) {
  const Json& v = require(obj, key, what);
  if (!v.is_string()) schema_error(what, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline double require_number(const Json& obj, const char* key, std::string_view what) {
  const Json& v = require(obj, key, what);
  if (!v.is_number()) schema_error(what, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline int require_int(const Json& obj, const char* key, std::string_view what) {
  const Json& v = require(obj, key, what);
  if (!v.is_number_integer()) schema_error(what, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline const Json& require_array(const Json& obj, const char* key, std::string_view what) {
  const Json& v = require(obj, key, what);
  if (!v.is_array()) schema_error(what, std::string("field '") + key + "' must be an array");
  return v;
}

inline std::vector<std::string> string_list(const Json& arr, std::string_view what) {
  std::vector<std::string> out;
  for (const Json& v : arr) {
    if (!v.is_string()) schema_error(what, "expected a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace lotforge::detail
