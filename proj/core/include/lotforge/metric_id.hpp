#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace lotforge {

// The eight livability metrics, in their canonical display order. The order
// doubles as the tie-break order when ranking metrics.
enum class MetricId : std::size_t {
  Shade,
  Play,
  Comfort,
  Safety,
  Nature,
  Recreation,
  Entertainment,
  Sociability,
};

inline constexpr std::size_t kMetricCount = 8;

inline constexpr std::array<MetricId, kMetricCount> kAllMetrics = {
    MetricId::Shade,  MetricId::Play,       MetricId::Comfort,       MetricId::Safety,
    MetricId::Nature, MetricId::Recreation, MetricId::Entertainment, MetricId::Sociability,
};

constexpr std::size_t index_of(MetricId m) { return static_cast<std::size_t>(m); }

/// Machine id: "shade", "play", ..., "nature", ..., "sociability".
std::string_view metric_key(MetricId m);

/// Human label, e.g. "Access to Nature".
std::string_view metric_label(MetricId m);

/// Accepts the machine id (case-insensitive) or the human label.
std::optional<MetricId> parse_metric(std::string_view text);

}  // namespace lotforge
