#include "lotforge/catalog.hpp"

#include "embedded_data.hpp"
#include "json_util.hpp"
#include "lotforge/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace lotforge {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryKeys = {
    "greenery", "seating", "play", "structure", "market",
    "lighting", "animal",  "garden", "art",     "surface"};

constexpr std::array<std::string_view, 12> kScenarioIds = {
    "A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4"};

constexpr std::string_view kWhat = "catalog";

bool is_lowercase(std::string_view s) {
  return std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isupper(c) != 0; });
}

template <typename T>
std::unordered_map<std::string, std::size_t> index_by_id(const std::vector<T>& items,
                                                         std::string_view label) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!index.emplace(items[i].id, i).second) {
      throw Error(ErrorKind::DuplicateId,
                  "duplicate " + std::string(label) + " id '" + items[i].id + "'");
    }
  }
  return index;
}

[[noreturn]] void dangling(std::string_view from, std::string_view id) {
  throw Error(ErrorKind::Integrity,
              std::string(from) + " references unknown id '" + std::string(id) + "'");
}

Pattern read_pattern(const detail::Json& j) {
  Pattern p;
  p.id = detail::require_string(j, "id", kWhat);
  p.name = detail::require_string(j, "name", kWhat);
  if (auto it = j.find("number"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) detail::schema_error(kWhat, "pattern number must be an integer");
    p.number = it->get<int>();
  }
  if (auto it = j.find("summary"); it != j.end()) p.summary = it->get<std::string>();
  if (auto it = j.find("related"); it != j.end()) p.related = detail::string_list(*it, kWhat);
  return p;
}

CatalogEntry read_entry(const detail::Json& j) {
  CatalogEntry e;
  e.id = detail::require_string(j, "id", kWhat);
  e.display_name = detail::require_string(j, "name", kWhat);
  const std::string cat = detail::require_string(j, "category", kWhat);
  auto category = parse_category(cat);
  if (!category) detail::schema_error(kWhat, "entry '" + e.id + "' has unknown category '" + cat + "'");
  e.category = *category;
  const auto& fp = detail::require(j, "footprint", kWhat);
  e.footprint_w = detail::require_number(fp, "w", kWhat);
  e.footprint_d = detail::require_number(fp, "d", kWhat);
  e.height = detail::require_number(j, "height", kWhat);
  e.canopy_radius = detail::require_number(j, "canopy_radius", kWhat);
  e.light_radius = detail::require_number(j, "light_radius", kWhat);
  e.seat_capacity = detail::require_int(j, "seat_capacity", kWhat);
  e.play_capacity = detail::require_int(j, "play_capacity", kWhat);
  e.adult_activity_capacity = detail::require_int(j, "adult_activity_capacity", kWhat);
  e.green_area = detail::require_number(j, "green_area", kWhat);
  e.tags = detail::string_list(detail::require_array(j, "tags", kWhat), kWhat);
  std::sort(e.tags.begin(), e.tags.end());
  e.tags.erase(std::unique(e.tags.begin(), e.tags.end()), e.tags.end());
  e.patterns = detail::string_list(detail::require_array(j, "patterns", kWhat), kWhat);

  const auto bad = [&](const std::string& why) {
    detail::schema_error(kWhat, "entry '" + e.id + "': " + why);
  };
  if (!(e.footprint_w > 0.0) || !(e.footprint_d > 0.0)) bad("footprint must be positive");
  if (e.height < 0.0 || e.canopy_radius < 0.0 || e.light_radius < 0.0 || e.green_area < 0.0) {
    bad("height, radii and green_area must be non-negative");
  }
  if (e.seat_capacity < 0 || e.play_capacity < 0 || e.adult_activity_capacity < 0) {
    bad("capacities must be non-negative");
  }
  if (e.is_shade_caster() && !(e.canopy_radius > 0.0 && e.height > 0.0)) {
    bad("shade-caster needs canopy_radius > 0 and height > 0");
  }
  return e;
}

Scenario read_scenario(const detail::Json& j) {
  Scenario s;
  s.id = detail::require_string(j, "id", kWhat);
  if (std::find(kScenarioIds.begin(), kScenarioIds.end(), s.id) == kScenarioIds.end()) {
    detail::schema_error(kWhat, "unknown scenario id '" + s.id + "'");
  }
  const std::string group = detail::require_string(j, "group", kWhat);
  if (group.size() != 1 || group[0] != s.id[0]) {
    detail::schema_error(kWhat, "scenario '" + s.id + "' has mismatched group '" + group + "'");
  }
  s.group = group[0];
  s.brief = detail::require_string(j, "brief", kWhat);
  for (const std::string& key :
       detail::string_list(detail::require_array(j, "designated_metrics", kWhat), kWhat)) {
    auto m = parse_metric(key);
    if (!m) detail::schema_error(kWhat, "scenario '" + s.id + "' has unknown metric '" + key + "'");
    s.designated_metrics.push_back(*m);
  }
  if (s.designated_metrics.empty()) {
    detail::schema_error(kWhat, "scenario '" + s.id + "' needs at least one designated metric");
  }
  std::sort(s.designated_metrics.begin(), s.designated_metrics.end());
  s.designated_metrics.erase(std::unique(s.designated_metrics.begin(), s.designated_metrics.end()),
                             s.designated_metrics.end());
  if (auto it = j.find("designated_note"); it != j.end()) s.designated_note = it->get<std::string>();
  s.suggested_entries =
      detail::string_list(detail::require_array(j, "suggested_entries", kWhat), kWhat);
  const auto& lex = detail::require(j, "lexicon", kWhat);
  s.lexicon.direct = detail::string_list(detail::require_array(lex, "direct", kWhat), kWhat);
  s.lexicon.indirect = detail::string_list(detail::require_array(lex, "indirect", kWhat), kWhat);
  for (const auto* list : {&s.lexicon.direct, &s.lexicon.indirect}) {
    for (const std::string& phrase : *list) {
      if (!is_lowercase(phrase)) {
        detail::schema_error(kWhat, "scenario '" + s.id + "' lexicon phrase '" + phrase +
                                        "' must be lowercase");
      }
    }
  }
  return s;
}

}  // namespace

std::string_view category_key(Category c) { return kCategoryKeys[static_cast<std::size_t>(c)]; }

std::optional<Category> parse_category(std::string_view text) {
  for (std::size_t i = 0; i < kCategoryKeys.size(); ++i) {
    if (kCategoryKeys[i] == text) return static_cast<Category>(i);
  }
  return std::nullopt;
}

bool CatalogEntry::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

Catalog::Catalog(std::string version, std::vector<Pattern> patterns,
                 std::vector<CatalogEntry> entries, std::vector<Scenario> scenarios)
    : version_(std::move(version)),
      patterns_(std::move(patterns)),
      entries_(std::move(entries)),
      scenarios_(std::move(scenarios)) {
  pattern_index_ = index_by_id(patterns_, "pattern");
  entry_index_ = index_by_id(entries_, "entry");
  scenario_index_ = index_by_id(scenarios_, "scenario");

  for (const Pattern& p : patterns_) {
    for (const std::string& r : p.related) {
      if (!pattern_index_.contains(r)) dangling("pattern '" + p.id + "'", r);
    }
  }
  for (const CatalogEntry& e : entries_) {
    for (const std::string& p : e.patterns) {
      if (!pattern_index_.contains(p)) dangling("entry '" + e.id + "'", p);
    }
  }
  for (const Scenario& s : scenarios_) {
    for (const std::string& id : s.suggested_entries) {
      if (!entry_index_.contains(id)) dangling("scenario '" + s.id + "'", id);
    }
  }
}

const CatalogEntry* Catalog::find_entry(std::string_view id) const {
  auto it = entry_index_.find(std::string(id));
  return it == entry_index_.end() ? nullptr : &entries_[it->second];
}

const Pattern* Catalog::find_pattern(std::string_view id) const {
  auto it = pattern_index_.find(std::string(id));
  return it == pattern_index_.end() ? nullptr : &patterns_[it->second];
}

const Scenario* Catalog::find_scenario(std::string_view id) const {
  auto it = scenario_index_.find(std::string(id));
  return it == scenario_index_.end() ? nullptr : &scenarios_[it->second];
}

const CatalogEntry& Catalog::entry(std::string_view id) const {
  if (const CatalogEntry* e = find_entry(id)) return *e;
  throw Error(ErrorKind::Catalog, "unknown catalog entry '" + std::string(id) + "'");
}

Catalog load_catalog(std::string_view document) {
  const detail::Json doc = detail::parse_json(document, kWhat);
  if (!doc.is_object()) detail::schema_error(kWhat, "top level must be an object");

  std::string version = detail::require_string(doc, "version", kWhat);
  std::vector<Pattern> patterns;
  for (const auto& j : detail::require_array(doc, "patterns", kWhat)) patterns.push_back(read_pattern(j));
  std::vector<CatalogEntry> entries;
  for (const auto& j : detail::require_array(doc, "entries", kWhat)) entries.push_back(read_entry(j));
  std::vector<Scenario> scenario_list;
  for (const auto& j : detail::require_array(doc, "scenarios", kWhat)) {
    scenario_list.push_back(read_scenario(j));
  }

  Catalog catalog(std::move(version), std::move(patterns), std::move(entries),
                  std::move(scenario_list));
  // Ids are restricted to A1..C4 and unique, so a count of 12 pins the three groups of four.
  if (catalog.scenario_list().size() != kScenarioIds.size()) {
    detail::schema_error(kWhat, "expected exactly 12 scenarios, found " +
                                    std::to_string(catalog.scenario_list().size()));
  }
  return catalog;
}

std::string encode_catalog(const Catalog& catalog) {
  using OJson = nlohmann::ordered_json;
  OJson doc;
  doc["version"] = catalog.version();
  OJson patterns = OJson::array();
  for (const Pattern& p : catalog.patterns()) {
    OJson j;
    j["id"] = p.id;
    if (p.number) j["number"] = *p.number;
    j["name"] = p.name;
    j["summary"] = p.summary;
    j["related"] = p.related;
    patterns.push_back(std::move(j));
  }
  doc["patterns"] = std::move(patterns);
  OJson entries = OJson::array();
  for (const CatalogEntry& e : catalog.entries()) {
    OJson j;
    j["id"] = e.id;
    j["name"] = e.display_name;
    j["category"] = category_key(e.category);
    j["footprint"] = {{"w", e.footprint_w}, {"d", e.footprint_d}};
    j["height"] = e.height;
    j["canopy_radius"] = e.canopy_radius;
    j["light_radius"] = e.light_radius;
    j["seat_capacity"] = e.seat_capacity;
    j["play_capacity"] = e.play_capacity;
    j["adult_activity_capacity"] = e.adult_activity_capacity;
    j["green_area"] = e.green_area;
    j["tags"] = e.tags;
    j["patterns"] = e.patterns;
    entries.push_back(std::move(j));
  }
  doc["entries"] = std::move(entries);
  OJson scen = OJson::array();
  for (const Scenario& s : catalog.scenario_list()) {
    OJson j;
    j["id"] = s.id;
    j["group"] = std::string(1, s.group);
    j["brief"] = s.brief;
    OJson metrics = OJson::array();
    for (MetricId m : s.designated_metrics) metrics.push_back(metric_key(m));
    j["designated_metrics"] = std::move(metrics);
    if (!s.designated_note.empty()) j["designated_note"] = s.designated_note;
    j["suggested_entries"] = s.suggested_entries;
    j["lexicon"] = {{"direct", s.lexicon.direct}, {"indirect", s.lexicon.indirect}};
    scen.push_back(std::move(j));
  }
  doc["scenarios"] = std::move(scen);
  return doc.dump(2) + "\n";
}

std::string_view builtin_catalog_document() { return embedded::kCatalogV1; }

const Catalog& builtin_catalog() {
  static const Catalog catalog = load_catalog(embedded::kCatalogV1);
  return catalog;
}

std::vector<Scenario> scenarios(const Catalog& catalog) {
  std::vector<Scenario> out = catalog.scenario_list();
  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
  return out;
}

std::vector<CatalogEntry> palette_for_scenario(const Catalog& catalog, std::string_view scenario_id) {
  const Scenario* scenario = catalog.find_scenario(scenario_id);
  if (!scenario) {
    throw Error(ErrorKind::NotFound, "unknown scenario '" + std::string(scenario_id) + "'");
  }
  std::vector<CatalogEntry> out;
  out.reserve(catalog.entries().size());
  std::set<std::string> placed;
  for (const std::string& id : scenario->suggested_entries) {
    if (placed.insert(id).second) out.push_back(catalog.entry(id));
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    for (const CatalogEntry& e : catalog.entries()) {
      if (static_cast<std::size_t>(e.category) == c && !placed.contains(e.id)) {
        placed.insert(e.id);
        out.push_back(e);
      }
    }
  }
  return out;
}

std::vector<CatalogEntry> entries_for_pattern(const Catalog& catalog, std::string_view pattern_id) {
  if (!catalog.find_pattern(pattern_id)) {
    throw Error(ErrorKind::NotFound, "unknown pattern '" + std::string(pattern_id) + "'");
  }
  std::vector<CatalogEntry> out;
  for (const CatalogEntry& e : catalog.entries()) {
    if (std::find(e.patterns.begin(), e.patterns.end(), pattern_id) != e.patterns.end()) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace lotforge
