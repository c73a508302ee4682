#include "lotforge/scene_codec.hpp"

#include "json_util.hpp"
#include "lotforge/error.hpp"

#include <cstdio>

namespace lotforge {

namespace {

constexpr std::string_view kWhat = "scene document";

std::string json_string(std::string_view s) { return detail::Json(std::string(s)).dump(); }

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", quantize(value));
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string encode_scene(const Scene& scene) {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": " + json_string(kSceneFormatVersion) + ",\n";
  out += "  \"lot\": {\"width\": " + format_number(scene.lot.width) +
         ", \"depth\": " + format_number(scene.lot.depth) +
         ", \"location_tag\": " + json_string(scene.lot.location_tag) + "},\n";
  out += "  \"scenario_id\": " + (scene.scenario_id ? json_string(*scene.scenario_id) : "null") + ",\n";
  const auto instances = sorted_instances(scene);
  if (instances.empty()) {
    out += "  \"instances\": []\n";
  } else {
    out += "  \"instances\": [\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const ElementInstance& inst = instances[i];
      out += "    {\"id\": " + json_string(inst.instance_id) + ", \"entry\": " + json_string(inst.entry_id) +
             ", \"x\": " + format_number(inst.pose.position.x) +
             ", \"y\": " + format_number(inst.pose.position.y) +
             ", \"rot\": " + format_number(inst.pose.rotation_deg) +
             ", \"scale\": " + format_number(inst.pose.scale) + "}";
      out += i + 1 < instances.size() ? ",\n" : "\n";
    }
    out += "  ]\n";
  }
  out += "}\n";
  return out;
}

Scene decode_scene(std::string_view text) {
  const detail::Json doc = detail::parse_json(text, kWhat);
  if (!doc.is_object()) detail::schema_error(kWhat, "top level must be an object");

  const detail::Json& version = detail::require(doc, "format_version", kWhat);
  if (!version.is_string() || version.get<std::string>() != kSceneFormatVersion) {
    throw Error(ErrorKind::Version, "unsupported scene format_version " + version.dump());
  }

  Scene scene;
  const detail::Json& lot = detail::require(doc, "lot", kWhat);
  scene.lot.width = quantize(detail::require_number(lot, "width", kWhat));
  scene.lot.depth = quantize(detail::require_number(lot, "depth", kWhat));
  if (auto it = lot.find("location_tag"); it != lot.end()) {
    if (!it->is_string()) detail::schema_error(kWhat, "location_tag must be a string");
    scene.lot.location_tag = it->get<std::string>();
  }

  if (auto it = doc.find("scenario_id"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) detail::schema_error(kWhat, "scenario_id must be a string or null");
    scene.scenario_id = it->get<std::string>();
  }

  for (const detail::Json& j : detail::require_array(doc, "instances", kWhat)) {
    ElementInstance inst;
    inst.instance_id = detail::require_string(j, "id", kWhat);
    inst.entry_id = detail::require_string(j, "entry", kWhat);
    inst.pose.position = {quantize(detail::require_number(j, "x", kWhat)),
                          quantize(detail::require_number(j, "y", kWhat))};
    inst.pose.rotation_deg = quantize(detail::require_number(j, "rot", kWhat));
    inst.pose.scale = quantize(detail::require_number(j, "scale", kWhat));
    scene.instances.push_back(std::move(inst));
  }
  return scene;
}

}  // namespace lotforge
