#include "lotforge/metric_id.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace lotforge {

namespace {

constexpr std::array<std::string_view, kMetricCount> kKeys = {
    "shade", "play", "comfort", "safety", "nature", "recreation", "entertainment", "sociability"};

constexpr std::array<std::string_view, kMetricCount> kLabels = {
    "Shade",    "Play",       "Comfort",       "Safety",
    "Access to Nature", "Recreation", "Entertainment", "Sociability"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view metric_key(MetricId m) { return kKeys[index_of(m)]; }
std::string_view metric_label(MetricId m) { return kLabels[index_of(m)]; }

std::optional<MetricId> parse_metric(std::string_view text) {
  const std::string needle = lower(text);
  for (MetricId m : kAllMetrics) {
    if (needle == metric_key(m) || needle == lower(metric_label(m))) return m;
  }
  if (needle == "access_to_nature") return MetricId::Nature;
  return std::nullopt;
}

}  // namespace lotforge
