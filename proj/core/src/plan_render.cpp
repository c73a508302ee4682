#include "lotforge/plan_render.hpp"

#include "lotforge/error.hpp"
#include "lotforge/scene_codec.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

namespace lotforge {

namespace {

constexpr std::array<CategoryStyle, kCategoryCount> kStyles = {{
    {"#4f9a3a", "#2f6b22"},  // greenery
    {"#b07a45", "#6e4a27"},  // seating
    {"#e0883a", "#9c5a1f"},  // play
    {"#8a8f99", "#555a63"},  // structure
    {"#d6544f", "#8f2e2a"},  // market
    {"#f2d64b", "#a08a1c"},  // lighting
    {"#c9b79c", "#7d6c52"},  // animal
    {"#7bbf5e", "#4a7f33"},  // garden
    {"#9b6fc4", "#5f3f86"},  // art
    {"#cfd6c4", "#8f987f"},  // surface
}};

constexpr double kMargin = 20.0;

struct PlanFrame {
  double depth;
  std::string x(double mx) const { return format_number(mx * kPlanUnitsPerMeter); }
  std::string y(double my) const { return format_number((depth - my) * kPlanUnitsPerMeter); }
  std::string len(double m) const { return format_number(m * kPlanUnitsPerMeter); }

  std::string points(const Polygon& poly) const {
    std::string out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) out += ' ';
      out += x(poly[i].x) + "," + y(poly[i].y);
    }
    return out;
  }
};

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

SunSample default_sun() {
  const ScoreConfig defaults;
  return *std::max_element(defaults.sun_samples.begin(), defaults.sun_samples.end(),
                           [](const SunSample& a, const SunSample& b) { return a.weight < b.weight; });
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Config, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

CategoryStyle category_style(Category c) { return kStyles[static_cast<std::size_t>(c)]; }

SunSample parse_sun(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorKind::Config, "sun must be given as 'altitude,azimuth'");
  }
  SunSample sun;
  sun.altitude_deg = parse_double(text.substr(0, comma));
  sun.azimuth_deg = parse_double(text.substr(comma + 1));
  sun.weight = 1.0;
  if (!(sun.altitude_deg > 0.0 && sun.altitude_deg <= 90.0)) {
    throw Error(ErrorKind::Config, "sun altitude must lie in (0, 90]");
  }
  if (!(sun.azimuth_deg >= 0.0 && sun.azimuth_deg < 360.0)) {
    throw Error(ErrorKind::Config, "sun azimuth must lie in [0, 360)");
  }
  return sun;
}

std::string render_plan(const Scene& scene, const Catalog& catalog, const RenderOptions& options) {
  const PlanFrame f{scene.lot.depth};
  const double w = scene.lot.width * kPlanUnitsPerMeter;
  const double h = scene.lot.depth * kPlanUnitsPerMeter;
  const auto instances = sorted_instances(scene);

  std::set<Category> present;
  for (const ElementInstance& inst : instances) {
    if (const CatalogEntry* e = catalog.find_entry(inst.entry_id)) present.insert(e->category);
  }
  const double legend_h = options.legend ? 16.0 * static_cast<double>(present.size()) + 8.0 : 0.0;
  const double view_w = w + 2 * kMargin + 40.0;
  const double view_h = h + 2 * kMargin + 30.0 + legend_h;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_number(view_w) +
         "\" height=\"" + format_number(view_h) + "\" viewBox=\"" + format_number(-kMargin) + " " +
         format_number(-kMargin) + " " + format_number(view_w) + " " + format_number(view_h) + "\">\n";
  svg += "  <title>Plan " + escape_xml(scene.scenario_id.value_or("free design")) + " (" +
         format_number(scene.lot.width) + " m x " + format_number(scene.lot.depth) + " m, " +
         escape_xml(scene.lot.location_tag) + ")</title>\n";
  svg += "  <rect class=\"lot\" x=\"0\" y=\"0\" width=\"" + format_number(w) + "\" height=\"" +
         format_number(h) + "\" fill=\"#e8e2d0\" stroke=\"#333333\" stroke-width=\"2\"/>\n";

  if (options.show_shadows) {
    const SunSample sun = options.sun.value_or(default_sun());
    std::string body;
    for (const ElementInstance& inst : instances) {
      const CatalogEntry* e = catalog.find_entry(inst.entry_id);
      if (!e || !e->is_shade_caster()) continue;
      const Polygon shadow = shadow_polygon(inst, catalog, sun, scene.lot);
      if (shadow.empty()) continue;
      body += "    <polygon class=\"shadow\" data-instance=\"" + escape_xml(inst.instance_id) +
              "\" points=\"" + f.points(shadow) + "\"/>\n";
    }
    if (!body.empty()) {
      svg += "  <g class=\"shadows\" fill=\"#1b1b1b\" fill-opacity=\"0.25\">\n" + body + "  </g>\n";
    }
  }

  if (!instances.empty()) {
    svg += "  <g class=\"elements\">\n";
    for (const ElementInstance& inst : instances) {
      const CatalogEntry* e = catalog.find_entry(inst.entry_id);
      if (!e) continue;
      const CategoryStyle style = category_style(e->category);
      const std::string common = " data-instance=\"" + escape_xml(inst.instance_id) +
                                 "\" data-entry=\"" + escape_xml(e->id) + "\" fill=\"" +
                                 std::string(style.fill) + "\" stroke=\"" + std::string(style.stroke) + "\"";
      const std::string cat(category_key(e->category));
      if (e->is_shade_caster() && e->category == Category::Greenery) {
        svg += "    <circle class=\"canopy glyph-" + cat + "\" cx=\"" + f.x(inst.pose.position.x) +
               "\" cy=\"" + f.y(inst.pose.position.y) + "\" r=\"" +
               f.len(e->canopy_radius * inst.pose.scale) + "\"" + common + " fill-opacity=\"0.8\"/>\n";
      } else {
        svg += "    <polygon class=\"glyph glyph-" + cat + "\" points=\"" +
               f.points(footprint_polygon(inst, *e)) + "\"" + common + "/>\n";
      }
      if (e->light_radius > 0.0) {
        svg += "    <circle class=\"light\" cx=\"" + f.x(inst.pose.position.x) + "\" cy=\"" +
               f.y(inst.pose.position.y) + "\" r=\"" + f.len(e->light_radius * inst.pose.scale) +
               "\" fill=\"none\" stroke=\"" + std::string(style.stroke) +
               "\" stroke-dasharray=\"4 4\"/>\n";
      }
    }
    svg += "  </g>\n";
  }

  const double bar_m = scene.lot.width >= 20.0 ? 10.0 : 5.0;
  const double bar_y = h + 15.0;
  svg += "  <g class=\"scale-bar\">\n";
  svg += "    <rect x=\"0\" y=\"" + format_number(bar_y) + "\" width=\"" + f.len(bar_m) +
         "\" height=\"4\" fill=\"#333333\"/>\n";
  svg += "    <text x=\"" + format_number(bar_m * kPlanUnitsPerMeter + 6.0) + "\" y=\"" +
         format_number(bar_y + 5.0) + "\" font-size=\"10\" font-family=\"sans-serif\">" +
         format_number(bar_m) + " m</text>\n";
  svg += "  </g>\n";

  const double ax = w + 20.0;
  svg += "  <g class=\"north-arrow\">\n";
  svg += "    <polygon points=\"" + format_number(ax) + ",0 " + format_number(ax - 6.0) + ",18 " +
         format_number(ax + 6.0) + ",18\" fill=\"#333333\"/>\n";
  svg += "    <text x=\"" + format_number(ax) + "\" y=\"30\" font-size=\"10\" font-family=\"sans-serif\" "
         "text-anchor=\"middle\">N</text>\n";
  svg += "  </g>\n";

  if (options.legend) {
    svg += "  <g class=\"legend\" font-size=\"10\" font-family=\"sans-serif\">\n";
    double y = bar_y + 20.0;
    for (Category c : present) {
      const CategoryStyle style = category_style(c);
      svg += "    <rect x=\"0\" y=\"" + format_number(y) + "\" width=\"10\" height=\"10\" fill=\"" +
             std::string(style.fill) + "\" stroke=\"" + std::string(style.stroke) + "\"/>\n";
      svg += "    <text x=\"16\" y=\"" + format_number(y + 9.0) + "\">" + std::string(category_key(c)) +
             "</text>\n";
      y += 16.0;
    }
    svg += "  </g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace lotforge
