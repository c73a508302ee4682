#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lotforge::testing {

namespace {

constexpr double kPiRef = 3.14159265358979323846;

struct Disc {
  double cx, cy, r;
};

// Marks every cell whose centre lies inside a disc; returns the covered count.
long paint(const std::vector<Disc>& discs, double width, double depth, double step) {
  const long nx = std::lround(width / step);
  const long ny = std::lround(depth / step);
  std::vector<unsigned char> hit(static_cast<std::size_t>(nx * ny), 0);
  for (const Disc& d : discs) {
    const long i0 = std::max(0L, static_cast<long>(std::floor((d.cx - d.r) / step)) - 1);
    const long i1 = std::min(nx - 1, static_cast<long>(std::ceil((d.cx + d.r) / step)) + 1);
    const long j0 = std::max(0L, static_cast<long>(std::floor((d.cy - d.r) / step)) - 1);
    const long j1 = std::min(ny - 1, static_cast<long>(std::ceil((d.cy + d.r) / step)) + 1);
    for (long i = i0; i <= i1; ++i) {
      const double x = (i + 0.5) * step - d.cx;
      for (long j = j0; j <= j1; ++j) {
        const double y = (j + 0.5) * step - d.cy;
        if (x * x + y * y <= d.r * d.r) hit[static_cast<std::size_t>(i * ny + j)] = 1;
      }
    }
  }
  return std::count(hit.begin(), hit.end(), 1);
}

}  // namespace

Vec2 scalar_shadow_offset(double height, double altitude_deg, double azimuth_deg) {
  if (altitude_deg >= 90.0) return {0.0, 0.0};
  const double len = height * std::cos(altitude_deg * kPiRef / 180.0) / std::sin(altitude_deg * kPiRef / 180.0);
  const double away = (azimuth_deg + 180.0) * kPiRef / 180.0;
  return {len * std::sin(away), len * std::cos(away)};
}

bool point_in_true_shadow(Vec2 p, const ElementInstance& inst, const CatalogEntry& entry, const SunSample& sun) {
  const double s = inst.pose.scale;
  const Vec2 off = scalar_shadow_offset(entry.height * s, sun.altitude_deg, sun.azimuth_deg);
  const double dx = p.x - (inst.pose.position.x + off.x);
  const double dy = p.y - (inst.pose.position.y + off.y);
  const double r = entry.canopy_radius * s;
  return dx * dx + dy * dy <= r * r;
}

double grid_shaded_fraction(const Scene& scene, const Catalog& catalog, const ScoreConfig& config, double step) {
  const double cells = std::round(scene.lot.width / step) * std::round(scene.lot.depth / step);
  double acc = 0.0;
  for (const SunSample& sun : config.sun_samples) {
    std::vector<Disc> discs;
    for (const ElementInstance& inst : scene.instances) {
      const CatalogEntry* e = catalog.find_entry(inst.entry_id);
      if (!e || e->canopy_radius <= 0.0 || e->height <= 0.0 || !e->has_tag(tags::kShadeCaster)) continue;
      const double s = inst.pose.scale;
      const Vec2 off = scalar_shadow_offset(e->height * s, sun.altitude_deg, sun.azimuth_deg);
      discs.push_back({inst.pose.position.x + off.x, inst.pose.position.y + off.y, e->canopy_radius * s});
    }
    acc += sun.weight * static_cast<double>(paint(discs, scene.lot.width, scene.lot.depth, step)) / cells;
  }
  return acc;
}

double grid_lighting_coverage(const Scene& scene, const Catalog& catalog, double step) {
  std::vector<Disc> discs;
  for (const ElementInstance& inst : scene.instances) {
    const CatalogEntry* e = catalog.find_entry(inst.entry_id);
    if (!e || e->light_radius <= 0.0) continue;
    discs.push_back({inst.pose.position.x, inst.pose.position.y, e->light_radius * inst.pose.scale});
  }
  const double cells = std::round(scene.lot.width / step) * std::round(scene.lot.depth / step);
  return static_cast<double>(paint(discs, scene.lot.width, scene.lot.depth, step)) / cells;
}

std::array<Vec2, 4> affine_corners(double w, double d, double scale, double rot_deg, Vec2 position) {
  const double c = std::cos(rot_deg * kPiRef / 180.0);
  const double s = std::sin(rot_deg * kPiRef / 180.0);
  const double hx = w * scale / 2.0;
  const double hy = d * scale / 2.0;
  const std::array<std::array<double, 2>, 4> local = {{{hx, hy}, {-hx, hy}, {-hx, -hy}, {hx, -hy}}};
  std::array<Vec2, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = {position.x + local[k][0] * c - local[k][1] * s, position.y + local[k][0] * s + local[k][1] * c};
  }
  return out;
}

}  // namespace lotforge::testing
