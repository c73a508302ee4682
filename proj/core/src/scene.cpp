#include "lotforge/scene.hpp"

#include "lotforge/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <tuple>

namespace lotforge {

namespace {

bool touches_lot(const Polygon& footprint, const LotSpec& lot) {
  return !clip_to_rect(footprint, lot.bounds()).empty();
}

bool inside_lot(const Polygon& footprint, const LotSpec& lot) {
  constexpr double kSlack = 1e-9;
  const Rect r = lot.bounds();
  return std::all_of(footprint.begin(), footprint.end(), [&](Vec2 v) {
    return v.x >= r.min_x - kSlack && v.x <= r.max_x + kSlack && v.y >= r.min_y - kSlack &&
           v.y <= r.max_y + kSlack;
  });
}

// Ids are "e" followed by a zero-padded counter; the counter continues past
// the largest existing numeric suffix so removed ids are not reissued within
// a scene's lineage.
std::string next_instance_id(const Scene& scene) {
  long max_seen = 0;
  for (const ElementInstance& inst : scene.instances) {
    const std::string& id = inst.instance_id;
    if (id.size() < 2 || id[0] != 'e') continue;
    long value = 0;
    auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), value);
    if (ec == std::errc() && ptr == id.data() + id.size()) max_seen = std::max(max_seen, value);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%04ld", max_seen + 1);
  return buf;
}

std::vector<ElementInstance>::const_iterator find_instance(const Scene& scene,
                                                           std::string_view instance_id) {
  return std::find_if(scene.instances.begin(), scene.instances.end(),
                      [&](const ElementInstance& e) { return e.instance_id == instance_id; });
}

}  // namespace

double quantize(double value) {
  const double q = std::round(value * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;  // drop negative zero
}

Pose normalize_pose(const Pose& pose) {
  if (!is_finite(pose.position) || !std::isfinite(pose.rotation_deg) || !std::isfinite(pose.scale)) {
    throw Error(ErrorKind::Pose, "pose components must be finite");
  }
  Pose out;
  out.position = {quantize(pose.position.x), quantize(pose.position.y)};
  double rot = std::fmod(pose.rotation_deg, 360.0);
  if (rot < 0.0) rot += 360.0;
  rot = quantize(rot);
  if (rot >= 360.0) rot -= 360.0;
  out.rotation_deg = rot;
  out.scale = quantize(pose.scale);
  if (out.scale < kMinScale || out.scale > kMaxScale) {
    throw Error(ErrorKind::Pose, "scale " + std::to_string(pose.scale) + " outside [0.5, 2.0]");
  }
  return out;
}

Pose make_pose(Vec2 position, double rotation_deg, double scale) {
  return normalize_pose(Pose{position, rotation_deg, scale});
}

void check_lot(const LotSpec& lot) {
  const auto ok = [](double v) { return std::isfinite(v) && v >= kMinLotSide && v <= kMaxLotSide; };
  if (!ok(lot.width) || !ok(lot.depth)) {
    throw Error(ErrorKind::Dimension, "lot sides must lie in [5, 200] m, got " +
                                          std::to_string(lot.width) + " x " +
                                          std::to_string(lot.depth));
  }
}

const ElementInstance* Scene::find(std::string_view instance_id) const {
  auto it = find_instance(*this, instance_id);
  return it == instances.end() ? nullptr : &*it;
}

std::vector<ElementInstance> sorted_instances(const Scene& scene) {
  std::vector<ElementInstance> out = scene.instances;
  std::stable_sort(out.begin(), out.end(), [](const ElementInstance& a, const ElementInstance& b) {
    return std::tie(a.instance_id, a.entry_id) < std::tie(b.instance_id, b.entry_id);
  });
  return out;
}

bool operator==(const Scene& a, const Scene& b) {
  if (!(a.lot == b.lot) || a.scenario_id != b.scenario_id ||
      a.instances.size() != b.instances.size()) {
    return false;
  }
  const auto lhs = sorted_instances(a);
  const auto rhs = sorted_instances(b);
  // Sorting by id alone leaves hand-built duplicates in input order; compare
  // as multisets to stay order-insensitive in that case too.
  return std::is_permutation(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

Scene create_scene(const LotSpec& lot, std::optional<std::string> scenario_id) {
  check_lot(lot);
  Scene scene;
  scene.lot = lot;
  scene.lot.width = quantize(lot.width);
  scene.lot.depth = quantize(lot.depth);
  scene.scenario_id = std::move(scenario_id);
  return scene;
}

std::pair<Scene, std::string> add_element(const Scene& scene, std::string_view entry_id,
                                          const Pose& pose, const Catalog& catalog) {
  const CatalogEntry& entry = catalog.entry(entry_id);
  ElementInstance inst{next_instance_id(scene), entry.id, normalize_pose(pose)};
  if (!touches_lot(footprint_polygon(inst, entry), scene.lot)) {
    throw Error(ErrorKind::Placement, "element '" + entry.id + "' at (" +
                                          std::to_string(inst.pose.position.x) + ", " +
                                          std::to_string(inst.pose.position.y) +
                                          ") lies entirely outside the lot");
  }
  Scene out = scene;
  std::string id = inst.instance_id;
  out.instances.push_back(std::move(inst));
  ++out.revision;
  return {std::move(out), std::move(id)};
}

Scene update_pose(const Scene& scene, std::string_view instance_id, const Pose& pose) {
  if (find_instance(scene, instance_id) == scene.instances.end()) {
    throw Error(ErrorKind::NotFound, "unknown instance '" + std::string(instance_id) + "'");
  }
  const Pose normalized = normalize_pose(pose);
  Scene out = scene;
  for (ElementInstance& inst : out.instances) {
    if (inst.instance_id == instance_id) inst.pose = normalized;
  }
  ++out.revision;
  return out;
}

Scene remove_element(const Scene& scene, std::string_view instance_id) {
  if (find_instance(scene, instance_id) == scene.instances.end()) {
    throw Error(ErrorKind::NotFound, "unknown instance '" + std::string(instance_id) + "'");
  }
  Scene out = scene;
  std::erase_if(out.instances,
                [&](const ElementInstance& e) { return e.instance_id == instance_id; });
  ++out.revision;
  return out;
}

Polygon footprint_polygon(const ElementInstance& instance, const CatalogEntry& entry) {
  const double hw = 0.5 * entry.footprint_w * instance.pose.scale;
  const double hd = 0.5 * entry.footprint_d * instance.pose.scale;
  const Polygon local = {{-hw, -hd}, {hw, -hd}, {hw, hd}, {-hw, hd}};
  Polygon out;
  out.reserve(local.size());
  for (Vec2 v : local) {
    out.push_back(rotate_ccw(v, instance.pose.rotation_deg) + instance.pose.position);
  }
  return out;
}

Polygon footprint_polygon(const ElementInstance& instance, const Catalog& catalog) {
  return footprint_polygon(instance, catalog.entry(instance.entry_id));
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::vector<ValidationIssue> validate_scene(const Scene& scene, const Catalog& catalog) {
  std::vector<ValidationIssue> issues;
  try {
    check_lot(scene.lot);
  } catch (const Error& e) {
    issues.push_back({Severity::Error, "invalid-lot", std::nullopt, e.what()});
  }
  const bool lot_ok = issues.empty();

  std::vector<std::string> ids;
  for (const ElementInstance& inst : scene.instances) ids.push_back(inst.instance_id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1] && (i == 1 || ids[i] != ids[i - 2])) {
      issues.push_back({Severity::Error, "duplicate-id", ids[i],
                        "instance id '" + ids[i] + "' is used more than once"});
    }
  }

  for (const ElementInstance& inst : scene.instances) {
    const CatalogEntry* entry = catalog.find_entry(inst.entry_id);
    if (!entry) {
      issues.push_back({Severity::Error, "unknown-entry", inst.instance_id,
                        "catalog has no entry '" + inst.entry_id + "'"});
      continue;
    }
    try {
      normalize_pose(inst.pose);
      if (inst.pose.rotation_deg < 0.0 || inst.pose.rotation_deg >= 360.0) {
        throw Error(ErrorKind::Pose, "rotation must lie in [0, 360)");
      }
    } catch (const Error& e) {
      issues.push_back({Severity::Error, "bad-pose", inst.instance_id, e.what()});
      continue;
    }
    if (!lot_ok) continue;
    const Polygon fp = footprint_polygon(inst, *entry);
    if (!touches_lot(fp, scene.lot)) {
      issues.push_back({Severity::Error, "off-lot", inst.instance_id,
                        "'" + inst.entry_id + "' lies entirely outside the lot"});
    } else if (!inside_lot(fp, scene.lot)) {
      issues.push_back({Severity::Warning, "partly-off-lot", inst.instance_id,
                        "'" + inst.entry_id + "' extends past the lot boundary"});
    }
  }

  std::stable_sort(issues.begin(), issues.end(), [](const ValidationIssue& a, const ValidationIssue& b) {
    const std::string ai = a.instance_id.value_or("");
    const std::string bi = b.instance_id.value_or("");
    return std::tie(a.severity, a.code, ai) < std::tie(b.severity, b.code, bi);
  });
  return issues;
}

bool has_errors(const std::vector<ValidationIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.severity == Severity::Error; });
}

}  // namespace lotforge
