#pragma once

#include "lotforge/catalog.hpp"
#include "lotforge/geometry.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lotforge {

inline constexpr double kMinLotSide = 5.0;
inline constexpr double kMaxLotSide = 200.0;
inline constexpr double kMinScale = 0.5;
inline constexpr double kMaxScale = 2.0;

/// Placement of an element. rotation_deg turns the footprint counter-clockwise
/// (seen from above) and is kept in [0, 360). All values are quantized to
/// 1e-6 so that the canonical document round-trips exactly.
struct Pose {
  Vec2 position;
  double rotation_deg = 0.0;
  double scale = 1.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Validates and canonicalizes a pose. Throws Error(Pose).
Pose make_pose(Vec2 position, double rotation_deg = 0.0, double scale = 1.0);
Pose normalize_pose(const Pose& pose);

/// Rounds to the 1e-6 grid used by the scene document.
double quantize(double value);

struct LotSpec {
  double width = 40.0;
  double depth = 30.0;
  std::string location_tag = "Los Angeles, CA";

  Rect bounds() const { return {0.0, 0.0, width, depth}; }
  double area() const { return width * depth; }
  Vec2 center() const { return {width / 2.0, depth / 2.0}; }

  friend bool operator==(const LotSpec&, const LotSpec&) = default;
};

/// Throws Error(Dimension) unless both sides lie in [5, 200] meters.
void check_lot(const LotSpec& lot);

struct ElementInstance {
  std::string instance_id;
  std::string entry_id;
  Pose pose;

  friend bool operator==(const ElementInstance&, const ElementInstance&) = default;
};

/// A lot and the elements placed on it. Equality ignores instance order and
/// the edit revision.
struct Scene {
  LotSpec lot;
  std::optional<std::string> scenario_id;
  std::vector<ElementInstance> instances;
  long revision = 0;

  const ElementInstance* find(std::string_view instance_id) const;
};

bool operator==(const Scene& a, const Scene& b);

/// Instances sorted by instance_id.
std::vector<ElementInstance> sorted_instances(const Scene& scene);

Scene create_scene(const LotSpec& lot, std::optional<std::string> scenario_id = std::nullopt);

/// Returns the new scene and the id assigned to the element. Throws
/// Error(Catalog) for unknown entries, Error(Pose) for invalid poses and
/// Error(Placement) when the footprint misses the lot entirely.
std::pair<Scene, std::string> add_element(const Scene& scene, std::string_view entry_id,
                                          const Pose& pose, const Catalog& catalog);

/// Throws Error(NotFound) for unknown instances and Error(Pose) for bad poses.
Scene update_pose(const Scene& scene, std::string_view instance_id, const Pose& pose);
Scene remove_element(const Scene& scene, std::string_view instance_id);

/// The entry's w x d rectangle, scaled, rotated and translated by the pose;
/// counter-clockwise vertex order.
Polygon footprint_polygon(const ElementInstance& instance, const CatalogEntry& entry);
Polygon footprint_polygon(const ElementInstance& instance, const Catalog& catalog);

enum class Severity { Error, Warning };

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string code;
  std::optional<std::string> instance_id;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

std::string_view to_string(Severity s);

/// Issues ordered by (severity, code, instance_id). Codes: unknown-entry,
/// duplicate-id, bad-pose, off-lot, invalid-lot (errors) and partly-off-lot
/// (warning).
std::vector<ValidationIssue> validate_scene(const Scene& scene, const Catalog& catalog);

bool has_errors(const std::vector<ValidationIssue>& issues);

}  // namespace lotforge
