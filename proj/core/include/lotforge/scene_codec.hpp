#pragma once

#include "lotforge/scene.hpp"

#include <string>
#include <string_view>

namespace lotforge {

inline constexpr std::string_view kSceneFormatVersion = "1";

/// Canonical scene document: fixed key order, instances sorted by id, numbers
/// printed with at most six decimals and no trailing zeros. Equal scenes
/// encode to identical bytes.
std::string encode_scene(const Scene& scene);

/// Throws ParseError (with line/column) for malformed text or schema
/// violations and Error(Version) for an unsupported format_version.
Scene decode_scene(std::string_view text);

/// Shortest decimal with at most six fractional digits, e.g. "12", "0.5".
std::string format_number(double value);

}  // namespace lotforge
