#pragma once

#include "lotforge/metric_id.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lotforge {

enum class Category {
  Greenery,
  Seating,
  Play,
  Structure,
  Market,
  Lighting,
  Animal,
  Garden,
  Art,
  Surface,
};

inline constexpr std::size_t kCategoryCount = 10;

std::string_view category_key(Category c);
std::optional<Category> parse_category(std::string_view text);

// Affordance tags with meaning to the metric engine.
namespace tags {
inline constexpr std::string_view kShadeCaster = "shade-caster";
inline constexpr std::string_view kStageLike = "stage-like";
inline constexpr std::string_view kGathering = "gathering";
inline constexpr std::string_view kNontraditional = "nontraditional";
}  // namespace tags

struct Pattern {
  std::string id;
  std::optional<int> number;  // published pattern number, when there is one
  std::string name;
  std::string summary;
  std::vector<std::string> related;
};

struct CatalogEntry {
  std::string id;
  std::string display_name;
  Category category = Category::Structure;
  double footprint_w = 1.0;
  double footprint_d = 1.0;
  double height = 0.0;
  double canopy_radius = 0.0;
  double light_radius = 0.0;
  int seat_capacity = 0;
  int play_capacity = 0;
  int adult_activity_capacity = 0;
  double green_area = 0.0;
  std::vector<std::string> tags;  // sorted, unique
  std::vector<std::string> patterns;

  bool has_tag(std::string_view tag) const;
  bool is_shade_caster() const { return has_tag(tags::kShadeCaster); }
};

struct Lexicon {
  std::vector<std::string> direct;    // lowercase phrases
  std::vector<std::string> indirect;  // lowercase single terms
};

struct Scenario {
  std::string id;  // A1..C4
  char group = 'A';
  std::string brief;
  std::vector<MetricId> designated_metrics;  // sorted by metric order
  std::string designated_note;                // empty unless the designation carries a caveat
  std::vector<std::string> suggested_entries;
  Lexicon lexicon;
};

/// Immutable after construction; lookups are by id.
class Catalog {
public:
  Catalog() = default;
  Catalog(std::string version, std::vector<Pattern> patterns, std::vector<CatalogEntry> entries,
          std::vector<Scenario> scenarios);

  const std::string& version() const { return version_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const std::vector<Scenario>& scenario_list() const { return scenarios_; }

  const CatalogEntry* find_entry(std::string_view id) const;
  const Pattern* find_pattern(std::string_view id) const;
  const Scenario* find_scenario(std::string_view id) const;

  /// Throws Error(Catalog) for unknown ids.
  const CatalogEntry& entry(std::string_view id) const;

private:
  std::string version_;
  std::vector<Pattern> patterns_;
  std::vector<CatalogEntry> entries_;
  std::vector<Scenario> scenarios_;
  std::unordered_map<std::string, std::size_t> entry_index_;
  std::unordered_map<std::string, std::size_t> pattern_index_;
  std::unordered_map<std::string, std::size_t> scenario_index_;
};

/// Parses and validates a catalog document. Throws ParseError for malformed
/// JSON or missing fields, Error(Integrity) naming a dangling id, and
/// Error(DuplicateId) for repeated ids.
Catalog load_catalog(std::string_view document);

/// Serializes a catalog back into the document format load_catalog reads.
std::string encode_catalog(const Catalog& catalog);

/// The baseline catalog compiled into the library (data/catalog.v1.json).
const Catalog& builtin_catalog();
std::string_view builtin_catalog_document();

/// The twelve scenarios in A1..A4, B1..B4, C1..C4 order.
std::vector<Scenario> scenarios(const Catalog& catalog);

/// Every catalog entry exactly once: the scenario's suggested entries first in
/// their listed order, then the rest grouped by category in catalog order.
std::vector<CatalogEntry> palette_for_scenario(const Catalog& catalog, std::string_view scenario_id);

std::vector<CatalogEntry> entries_for_pattern(const Catalog& catalog, std::string_view pattern_id);

}  // namespace lotforge
