#pragma once

#include "lotforge/catalog.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/scene.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace lotforge {

/// SVG user units per meter.
inline constexpr double kPlanUnitsPerMeter = 10.0;

struct RenderOptions {
  bool show_shadows = false;
  std::optional<SunSample> sun;  // defaults to the heaviest default sun sample
  bool legend = false;
};

struct CategoryStyle {
  std::string_view fill;
  std::string_view stroke;
};

/// Fill and stroke used for glyphs of a category.
CategoryStyle category_style(Category c);

/// Top-down SVG 1.1 drawing of the scene, north up. Contains the lot, one
/// glyph per element (shade-casters as canopy circles, everything else as its
/// footprint), optional shadows, a scale bar, a north arrow and an optional
/// legend. Equal inputs give byte-identical output.
std::string render_plan(const Scene& scene, const Catalog& catalog, const RenderOptions& options = {});

/// Parses "alt,az" into a sun sample with weight 1. Throws Error(Config).
SunSample parse_sun(std::string_view text);

}  // namespace lotforge
