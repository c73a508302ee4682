#pragma once

#include "lotforge/catalog.hpp"
#include "lotforge/geometry.hpp"
#include "lotforge/metric_id.hpp"
#include "lotforge/scene.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace lotforge {

/// One sun position. Azimuth is a compass bearing (0 = north, clockwise).
struct SunSample {
  double altitude_deg = 90.0;  // (0, 90]
  double azimuth_deg = 180.0;  // [0, 360)
  double weight = 1.0;
};

/// Calibration knobs for the synthetic rater. Defaults reproduce the
/// shipped data/score-config.v1.json.
struct ScoreConfig {
  std::string version = "1";
  std::vector<SunSample> sun_samples = {
      {70.0, 180.0, 0.4}, {35.0, 120.0, 0.3}, {35.0, 240.0, 0.3}};
  int circle_sides = 24;

  // Saturation points: score = 1 + 6 * clamp(feature / saturation, 0, 1).
  std::array<double, kMetricCount> saturation = {0.5, 20.0, 1.0, 1.0, 1.0, 16.0, 1.0, 1.0};

  double comfort_seat_target = 20.0;     // seats counted toward full comfort
  double comfort_seat_weight = 0.6;
  double comfort_shade_weight = 0.4;
  double safety_lighting_reference = 0.5;
  double safety_lighting_weight = 0.5;
  double safety_supervision_weight = 0.5;
  double supervision_radius = 15.0;      // m from a play element to the nearest seat
  double nature_green_reference = 0.3;   // green share of the lot worth a full score
  double nature_animal_bonus = 0.05;
  int nature_animal_cap = 4;
  double entertainment_stage_weight = 0.5;
  double entertainment_open_weight = 0.5;
  double entertainment_open_area = 50.0;   // m^2 of open ground needed near a stage
  double entertainment_open_radius = 10.0; // m
  double open_grid_step = 1.0;             // m
  double sociability_pair_distance = 3.0;  // m
  int sociability_gathering_pairs = 2;
  double sociability_pair_reference = 15.0;
  double grid_resolution = 0.1;            // oracle sampling step, m

  double saturation_for(MetricId m) const { return saturation[index_of(m)]; }
};

/// Throws Error(Config) when a constant is non-positive or the sun weights do
/// not sum to 1.
void check_config(const ScoreConfig& config);

/// Reads a score config document; missing keys keep their defaults.
ScoreConfig load_score_config(std::string_view document);
std::string_view builtin_score_config_document();
std::string encode_score_config(const ScoreConfig& config);

struct MetricVector {
  std::array<double, kMetricCount> scores{};

  double operator[](MetricId m) const { return scores[index_of(m)]; }
  double& operator[](MetricId m) { return scores[index_of(m)]; }

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

/// Every intermediate feeding the eight scores.
struct ScoreBreakdown {
  double shaded_fraction = 0.0;
  int seats = 0;
  double shaded_seat_fraction = 0.0;
  double lighting_coverage = 0.0;
  int play_elements = 0;
  int supervised_play_elements = 0;
  int play_capacity = 0;
  int adult_activity_capacity = 0;
  double green_area = 0.0;
  int animal_count = 0;
  bool stage_present = false;
  double open_area_near_stage = 0.0;
  int sociability_pairs = 0;
  std::array<double, kMetricCount> features{};
};

struct ScoreResult {
  MetricVector vector;
  ScoreBreakdown breakdown;
};

/// Canopy disc (equal-area n-gon) shifted away from the sun by
/// height * scale / tan(altitude), clipped to the lot. Throws
/// Error(Affordance) for elements that are not shade-casters.
Polygon shadow_polygon(const ElementInstance& instance, const Catalog& catalog, const SunSample& sun,
                       const LotSpec& lot, int circle_sides = 24);

/// Ground offset of a shadow: length height / tan(altitude) pointing at the
/// bearing opposite the sun. Zero at altitude 90.
Vec2 shadow_offset(double height, const SunSample& sun);

/// Shadow polygons of every shade-caster in the scene for one sun sample.
std::vector<Polygon> scene_shadows(const Scene& scene, const Catalog& catalog, const SunSample& sun,
                                   int circle_sides = 24);

double shaded_fraction(const Scene& scene, const Catalog& catalog, const ScoreConfig& config = {});

struct SeatingStats {
  int seats = 0;
  double shaded_seat_fraction = 0.0;  // by seat capacity
};

SeatingStats seating_stats(const Scene& scene, const Catalog& catalog, const ScoreConfig& config = {});

double lighting_coverage(const Scene& scene, const Catalog& catalog, const ScoreConfig& config = {});

int sociability_pairs(const Scene& scene, const Catalog& catalog, const ScoreConfig& config = {});

/// Throws Error(Validation) when validate_scene reports errors.
ScoreResult score_scene(const Scene& scene, const Catalog& catalog, const ScoreConfig& config = {});

/// Plain-text report: one "metric score" line per metric, optionally
/// followed by the breakdown.
std::string format_score_report(const ScoreResult& result, bool breakdown);

/// JSON report with scores and breakdown.
std::string score_report_json(const ScoreResult& result, const ScoreConfig& config);

}  // namespace lotforge
