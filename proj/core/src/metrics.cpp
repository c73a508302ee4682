#include "lotforge/metrics.hpp"

#include "embedded_data.hpp"
#include "json_util.hpp"
#include "lotforge/error.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace lotforge {

namespace {

constexpr std::string_view kWhat = "score config";

struct DoubleKnob {
  const char* key;
  double ScoreConfig::*member;
};

struct IntKnob {
  const char* key;
  int ScoreConfig::*member;
};

constexpr DoubleKnob kDoubleKnobs[] = {
    {"comfort_seat_target", &ScoreConfig::comfort_seat_target},
    {"comfort_seat_weight", &ScoreConfig::comfort_seat_weight},
    {"comfort_shade_weight", &ScoreConfig::comfort_shade_weight},
    {"safety_lighting_reference", &ScoreConfig::safety_lighting_reference},
    {"safety_lighting_weight", &ScoreConfig::safety_lighting_weight},
    {"safety_supervision_weight", &ScoreConfig::safety_supervision_weight},
    {"supervision_radius", &ScoreConfig::supervision_radius},
    {"nature_green_reference", &ScoreConfig::nature_green_reference},
    {"nature_animal_bonus", &ScoreConfig::nature_animal_bonus},
    {"entertainment_stage_weight", &ScoreConfig::entertainment_stage_weight},
    {"entertainment_open_weight", &ScoreConfig::entertainment_open_weight},
    {"entertainment_open_area", &ScoreConfig::entertainment_open_area},
    {"entertainment_open_radius", &ScoreConfig::entertainment_open_radius},
    {"open_grid_step", &ScoreConfig::open_grid_step},
    {"sociability_pair_distance", &ScoreConfig::sociability_pair_distance},
    {"sociability_pair_reference", &ScoreConfig::sociability_pair_reference},
    {"grid_resolution", &ScoreConfig::grid_resolution},
};

constexpr IntKnob kIntKnobs[] = {
    {"circle_sides", &ScoreConfig::circle_sides},
    {"nature_animal_cap", &ScoreConfig::nature_animal_cap},
    {"sociability_gathering_pairs", &ScoreConfig::sociability_gathering_pairs},
};

double to_score(double feature, double saturation) {
  return 1.0 + 6.0 * std::clamp(feature / saturation, 0.0, 1.0);
}

double total_weight(const ScoreConfig& config) {
  double w = 0.0;
  for (const SunSample& s : config.sun_samples) w += s.weight;
  return w;
}

struct Resolved {
  const ElementInstance* instance;
  const CatalogEntry* entry;
};

std::vector<Resolved> resolve(const Scene& scene, const Catalog& catalog) {
  std::vector<Resolved> out;
  out.reserve(scene.instances.size());
  for (const ElementInstance& inst : scene.instances) {
    if (const CatalogEntry* e = catalog.find_entry(inst.entry_id)) out.push_back({&inst, e});
  }
  // Instance order must not leak into any result; sort by id for stable float sums.
  std::sort(out.begin(), out.end(), [](const Resolved& a, const Resolved& b) {
    return a.instance->instance_id < b.instance->instance_id;
  });
  return out;
}

bool in_any(const std::vector<Polygon>& polys, Vec2 p) {
  return std::any_of(polys.begin(), polys.end(), [&](const Polygon& poly) { return contains(poly, p); });
}

std::vector<Polygon> shadows_of(const std::vector<Resolved>& items, const SunSample& sun,
                                const LotSpec& lot, int sides) {
  std::vector<Polygon> out;
  for (const Resolved& r : items) {
    if (!r.entry->is_shade_caster()) continue;
    const double radius = r.entry->canopy_radius * r.instance->pose.scale;
    const Vec2 offset = shadow_offset(r.entry->height * r.instance->pose.scale, sun);
    Polygon disc = regular_polygon(r.instance->pose.position + offset, radius, sides, true);
    Polygon clipped = clip_to_rect(disc, lot.bounds());
    if (!clipped.empty()) out.push_back(std::move(clipped));
  }
  return out;
}

double shaded_fraction_of(const std::vector<Resolved>& items, const LotSpec& lot,
                          const ScoreConfig& config) {
  double acc = 0.0;
  for (const SunSample& sun : config.sun_samples) {
    const auto shadows = shadows_of(items, sun, lot, config.circle_sides);
    if (shadows.empty()) continue;
    acc += sun.weight * union_area(shadows) / lot.area();
  }
  return std::clamp(acc, 0.0, 1.0);
}

SeatingStats seating_of(const std::vector<Resolved>& items, const LotSpec& lot,
                        const ScoreConfig& config) {
  SeatingStats stats;
  std::vector<std::vector<Polygon>> per_sample;
  for (const SunSample& sun : config.sun_samples) {
    per_sample.push_back(shadows_of(items, sun, lot, config.circle_sides));
  }
  const double half = 0.5 * total_weight(config);
  int shaded_seats = 0;
  for (const Resolved& r : items) {
    const int cap = r.entry->seat_capacity;
    if (cap <= 0) continue;
    stats.seats += cap;
    double shaded_weight = 0.0;
    for (std::size_t s = 0; s < config.sun_samples.size(); ++s) {
      if (in_any(per_sample[s], r.instance->pose.position)) shaded_weight += config.sun_samples[s].weight;
    }
    if (shaded_weight >= half - 1e-12) shaded_seats += cap;
  }
  stats.shaded_seat_fraction =
      stats.seats > 0 ? static_cast<double>(shaded_seats) / static_cast<double>(stats.seats) : 0.0;
  return stats;
}

double lighting_of(const std::vector<Resolved>& items, const LotSpec& lot, const ScoreConfig& config) {
  std::vector<Polygon> discs;
  for (const Resolved& r : items) {
    if (r.entry->light_radius <= 0.0) continue;
    Polygon disc = regular_polygon(r.instance->pose.position,
                                   r.entry->light_radius * r.instance->pose.scale,
                                   config.circle_sides, true);
    Polygon clipped = clip_to_rect(disc, lot.bounds());
    if (!clipped.empty()) discs.push_back(std::move(clipped));
  }
  if (discs.empty()) return 0.0;
  return std::clamp(union_area(discs) / lot.area(), 0.0, 1.0);
}

int pairs_of(const std::vector<Resolved>& items, const ScoreConfig& config) {
  std::vector<Vec2> seats;
  int gathering = 0;
  for (const Resolved& r : items) {
    if (r.entry->seat_capacity > 0) seats.push_back(r.instance->pose.position);
    if (r.entry->has_tag(tags::kGathering)) ++gathering;
  }
  int pairs = 0;
  for (std::size_t i = 0; i < seats.size(); ++i) {
    for (std::size_t j = i + 1; j < seats.size(); ++j) {
      if (distance(seats[i], seats[j]) <= config.sociability_pair_distance) ++pairs;
    }
  }
  return pairs + config.sociability_gathering_pairs * gathering;
}

}  // namespace

void check_config(const ScoreConfig& config) {
  const auto fail = [](const std::string& why) { throw Error(ErrorKind::Config, "score config: " + why); };
  if (config.sun_samples.empty()) fail("at least one sun sample is required");
  for (const SunSample& s : config.sun_samples) {
    if (!(s.altitude_deg > 0.0 && s.altitude_deg <= 90.0)) fail("sun altitude must lie in (0, 90]");
    if (!(s.azimuth_deg >= 0.0 && s.azimuth_deg < 360.0)) fail("sun azimuth must lie in [0, 360)");
    if (!(s.weight >= 0.0)) fail("sun weights must be non-negative");
  }
  if (std::abs(total_weight(config) - 1.0) > 1e-9) fail("sun sample weights must sum to 1");
  for (double s : config.saturation) {
    if (!(s > 0.0)) fail("saturation constants must be positive");
  }
  for (const DoubleKnob& k : kDoubleKnobs) {
    if (!(config.*(k.member) > 0.0)) fail(std::string(k.key) + " must be positive");
  }
  for (const IntKnob& k : kIntKnobs) {
    if (!(config.*(k.member) > 0)) fail(std::string(k.key) + " must be positive");
  }
  if (config.circle_sides < 8) fail("circle_sides must be at least 8");
}

ScoreConfig load_score_config(std::string_view document) {
  const detail::Json doc = detail::parse_json(document, kWhat);
  if (!doc.is_object()) detail::schema_error(kWhat, "top level must be an object");
  ScoreConfig config;
  if (auto it = doc.find("version"); it != doc.end()) config.version = it->get<std::string>();
  if (auto it = doc.find("sun_samples"); it != doc.end()) {
    config.sun_samples.clear();
    for (const auto& j : *it) {
      config.sun_samples.push_back({detail::require_number(j, "altitude_deg", kWhat),
                                    detail::require_number(j, "azimuth_deg", kWhat),
                                    detail::require_number(j, "weight", kWhat)});
    }
  }
  if (auto it = doc.find("saturation"); it != doc.end()) {
    for (const auto& [key, value] : it->items()) {
      auto m = parse_metric(key);
      if (!m) detail::schema_error(kWhat, "unknown metric '" + key + "' in saturation");
      if (!value.is_number()) detail::schema_error(kWhat, "saturation values must be numbers");
      config.saturation[index_of(*m)] = value.get<double>();
    }
  }
  if (auto it = doc.find("constants"); it != doc.end()) {
    for (const auto& [key, value] : it->items()) {
      bool known = false;
      for (const DoubleKnob& k : kDoubleKnobs) {
        if (key == k.key) {
          if (!value.is_number()) detail::schema_error(kWhat, key + " must be a number");
          config.*(k.member) = value.get<double>();
          known = true;
        }
      }
      for (const IntKnob& k : kIntKnobs) {
        if (key == k.key) {
          if (!value.is_number_integer()) detail::schema_error(kWhat, key + " must be an integer");
          config.*(k.member) = value.get<int>();
          known = true;
        }
      }
      if (!known) detail::schema_error(kWhat, "unknown constant '" + key + "'");
    }
  }
  check_config(config);
  return config;
}

std::string encode_score_config(const ScoreConfig& config) {
  nlohmann::ordered_json doc;
  doc["version"] = config.version;
  auto suns = nlohmann::ordered_json::array();
  for (const SunSample& s : config.sun_samples) {
    suns.push_back({{"altitude_deg", s.altitude_deg}, {"azimuth_deg", s.azimuth_deg}, {"weight", s.weight}});
  }
  doc["sun_samples"] = std::move(suns);
  nlohmann::ordered_json sat;
  for (MetricId m : kAllMetrics) sat[std::string(metric_key(m))] = config.saturation_for(m);
  doc["saturation"] = std::move(sat);
  nlohmann::ordered_json constants;
  for (const IntKnob& k : kIntKnobs) constants[k.key] = config.*(k.member);
  for (const DoubleKnob& k : kDoubleKnobs) constants[k.key] = config.*(k.member);
  doc["constants"] = std::move(constants);
  return doc.dump(2) + "\n";
}

Vec2 shadow_offset(double height, const SunSample& sun) {
  if (sun.altitude_deg >= 90.0) return {0.0, 0.0};
  const double length = height / std::tan(deg_to_rad(sun.altitude_deg));
  return bearing_vector(sun.azimuth_deg + 180.0) * length;
}

Polygon shadow_polygon(const ElementInstance& instance, const Catalog& catalog, const SunSample& sun,
                       const LotSpec& lot, int circle_sides) {
  const CatalogEntry& entry = catalog.entry(instance.entry_id);
  if (!entry.is_shade_caster()) {
    throw Error(ErrorKind::Affordance, "'" + entry.id + "' does not cast shade");
  }
  const std::vector<Resolved> items = {{&instance, &entry}};
  auto shadows = shadows_of(items, sun, lot, circle_sides);
  return shadows.empty() ? Polygon{} : std::move(shadows.front());
}

std::vector<Polygon> scene_shadows(const Scene& scene, const Catalog& catalog, const SunSample& sun,
                                   int circle_sides) {
  return shadows_of(resolve(scene, catalog), sun, scene.lot, circle_sides);
}

double shaded_fraction(const Scene& scene, const Catalog& catalog, const ScoreConfig& config) {
  return shaded_fraction_of(resolve(scene, catalog), scene.lot, config);
}

SeatingStats seating_stats(const Scene& scene, const Catalog& catalog, const ScoreConfig& config) {
  return seating_of(resolve(scene, catalog), scene.lot, config);
}

double lighting_coverage(const Scene& scene, const Catalog& catalog, const ScoreConfig& config) {
  return lighting_of(resolve(scene, catalog), scene.lot, config);
}

int sociability_pairs(const Scene& scene, const Catalog& catalog, const ScoreConfig& config) {
  return pairs_of(resolve(scene, catalog), config);
}

ScoreResult score_scene(const Scene& scene, const Catalog& catalog, const ScoreConfig& config) {
  check_config(config);
  const auto issues = validate_scene(scene, catalog);
  if (has_errors(issues)) {
    std::string msg = "scene has validation errors:";
    for (const ValidationIssue& i : issues) {
      if (i.severity == Severity::Error) msg += " " + i.code;
    }
    throw Error(ErrorKind::Validation, msg);
  }

  const auto items = resolve(scene, catalog);
  const LotSpec& lot = scene.lot;
  ScoreResult result;
  ScoreBreakdown& b = result.breakdown;

  b.shaded_fraction = shaded_fraction_of(items, lot, config);
  const SeatingStats seating = seating_of(items, lot, config);
  b.seats = seating.seats;
  b.shaded_seat_fraction = seating.shaded_seat_fraction;
  b.lighting_coverage = lighting_of(items, lot, config);
  b.sociability_pairs = pairs_of(items, config);

  std::vector<Vec2> seat_positions;
  std::vector<Vec2> stage_positions;
  std::vector<Polygon> footprints;
  for (const Resolved& r : items) {
    const double s = r.instance->pose.scale;
    b.play_capacity += r.entry->play_capacity;
    b.adult_activity_capacity += r.entry->adult_activity_capacity;
    b.green_area += r.entry->green_area * s * s;
    if (r.entry->category == Category::Animal) ++b.animal_count;
    if (r.entry->seat_capacity > 0) seat_positions.push_back(r.instance->pose.position);
    if (r.entry->has_tag(tags::kStageLike)) stage_positions.push_back(r.instance->pose.position);
    footprints.push_back(footprint_polygon(*r.instance, *r.entry));
  }

  for (const Resolved& r : items) {
    if (r.entry->category != Category::Play) continue;
    ++b.play_elements;
    const Vec2 p = r.instance->pose.position;
    const bool watched = std::any_of(seat_positions.begin(), seat_positions.end(), [&](Vec2 seat) {
      return distance(seat, p) <= config.supervision_radius;
    });
    if (watched) ++b.supervised_play_elements;
  }

  b.stage_present = !stage_positions.empty();
  if (b.stage_present) {
    const double step = config.open_grid_step;
    const int nx = static_cast<int>(std::floor(lot.width / step));
    const int ny = static_cast<int>(std::floor(lot.depth / step));
    int open_cells = 0;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        const Vec2 p{(i + 0.5) * step, (j + 0.5) * step};
        const bool near_stage = std::any_of(stage_positions.begin(), stage_positions.end(), [&](Vec2 st) {
          return distance(st, p) <= config.entertainment_open_radius;
        });
        if (near_stage && !in_any(footprints, p)) ++open_cells;
      }
    }
    b.open_area_near_stage = open_cells * step * step;
  }

  auto& f = b.features;
  f[index_of(MetricId::Shade)] = b.shaded_fraction;
  f[index_of(MetricId::Play)] = b.play_capacity;
  f[index_of(MetricId::Comfort)] =
      config.comfort_seat_weight * std::min(1.0, b.seats / config.comfort_seat_target) +
      config.comfort_shade_weight * b.shaded_seat_fraction;
  const double supervised = b.play_elements > 0
                                ? static_cast<double>(b.supervised_play_elements) / b.play_elements
                                : 0.0;
  f[index_of(MetricId::Safety)] =
      config.safety_lighting_weight * b.lighting_coverage / config.safety_lighting_reference +
      config.safety_supervision_weight * supervised;
  f[index_of(MetricId::Nature)] =
      (b.green_area / lot.area()) / config.nature_green_reference +
      config.nature_animal_bonus * std::min(b.animal_count, config.nature_animal_cap);
  f[index_of(MetricId::Recreation)] = b.adult_activity_capacity;
  f[index_of(MetricId::Entertainment)] =
      (b.stage_present ? config.entertainment_stage_weight : 0.0) +
      (b.stage_present && b.open_area_near_stage >= config.entertainment_open_area
           ? config.entertainment_open_weight
           : 0.0);
  f[index_of(MetricId::Sociability)] = b.sociability_pairs / config.sociability_pair_reference;

  for (MetricId m : kAllMetrics) {
    result.vector[m] = to_score(f[index_of(m)], config.saturation_for(m));
  }
  return result;
}

std::string format_score_report(const ScoreResult& result, bool breakdown) {
  std::string out;
  char line[128];
  for (MetricId m : kAllMetrics) {
    std::snprintf(line, sizeof line, "%-14s %.2f\n", std::string(metric_key(m)).c_str(), result.vector[m]);
    out += line;
  }
  if (breakdown) {
    const ScoreBreakdown& b = result.breakdown;
    const std::pair<const char*, double> rows[] = {
        {"shaded_fraction", b.shaded_fraction},
        {"seats", static_cast<double>(b.seats)},
        {"shaded_seat_fraction", b.shaded_seat_fraction},
        {"lighting_coverage", b.lighting_coverage},
        {"play_elements", static_cast<double>(b.play_elements)},
        {"supervised_play_elements", static_cast<double>(b.supervised_play_elements)},
        {"play_capacity", static_cast<double>(b.play_capacity)},
        {"adult_activity_capacity", static_cast<double>(b.adult_activity_capacity)},
        {"green_area_m2", b.green_area},
        {"animal_count", static_cast<double>(b.animal_count)},
        {"stage_present", b.stage_present ? 1.0 : 0.0},
        {"open_area_near_stage_m2", b.open_area_near_stage},
        {"sociability_pairs", static_cast<double>(b.sociability_pairs)},
    };
    out += "--\n";
    for (const auto& [name, value] : rows) {
      std::snprintf(line, sizeof line, "%-26s %.6f\n", name, value);
      out += line;
    }
  }
  return out;
}

std::string score_report_json(const ScoreResult& result, const ScoreConfig& config) {
  nlohmann::ordered_json doc;
  doc["config_version"] = config.version;
  nlohmann::ordered_json scores;
  for (MetricId m : kAllMetrics) scores[std::string(metric_key(m))] = result.vector[m];
  doc["scores"] = std::move(scores);
  const ScoreBreakdown& b = result.breakdown;
  nlohmann::ordered_json br;
  br["shaded_fraction"] = b.shaded_fraction;
  br["seats"] = b.seats;
  br["shaded_seat_fraction"] = b.shaded_seat_fraction;
  br["lighting_coverage"] = b.lighting_coverage;
  br["play_elements"] = b.play_elements;
  br["supervised_play_elements"] = b.supervised_play_elements;
  br["play_capacity"] = b.play_capacity;
  br["adult_activity_capacity"] = b.adult_activity_capacity;
  br["green_area"] = b.green_area;
  br["animal_count"] = b.animal_count;
  br["stage_present"] = b.stage_present;
  br["open_area_near_stage"] = b.open_area_near_stage;
  br["sociability_pairs"] = b.sociability_pairs;
  nlohmann::ordered_json features;
  for (MetricId m : kAllMetrics) features[std::string(metric_key(m))] = b.features[index_of(m)];
  br["features"] = std::move(features);
  doc["breakdown"] = std::move(br);
  return doc.dump(2) + "\n";
}

std::string_view builtin_score_config_document() { return embedded::kScoreConfigV1; }

}  // namespace lotforge
