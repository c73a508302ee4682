#include "lotforge/replication.hpp"

#include "embedded_data.hpp"
#include "lotforge/error.hpp"
#include "lotforge/scene_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lotforge {

namespace {

double angular_difference(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace

void check_tolerances(const MatchTolerances& tol) {
  if (!(tol.pos_eps > 0.0) || !(tol.rot_eps > 0.0) || !(tol.scale_eps > 0.0)) {
    throw Error(ErrorKind::Config, "match tolerances must be strictly positive");
  }
}

MatchReport match_replication(const Scene& candidate, const Scene& target,
                              const MatchTolerances& tol) {
  check_tolerances(tol);
  const auto targets = sorted_instances(target);
  const auto candidates = sorted_instances(candidate);

  std::map<std::string, std::vector<std::size_t>> pool;  // entry id -> unused candidate indices
  for (std::size_t i = 0; i < candidates.size(); ++i) pool[candidates[i].entry_id].push_back(i);

  MatchReport report;
  for (const ElementInstance& t : targets) {
    auto it = pool.find(t.entry_id);
    if (it == pool.end() || it->second.empty()) {
      report.missing.push_back(t.instance_id);
      continue;
    }
    auto& indices = it->second;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    // indices are ascending by candidate id, so strict < keeps the smaller id on ties
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const double d = distance(candidates[indices[k]].pose.position, t.pose.position);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    const ElementInstance& c = candidates[indices[best]];
    indices.erase(indices.begin() + static_cast<std::ptrdiff_t>(best));

    PairDeviation dev;
    dev.target_id = t.instance_id;
    dev.candidate_id = c.instance_id;
    dev.position = best_dist;
    dev.rotation = angular_difference(c.pose.rotation_deg, t.pose.rotation_deg);
    dev.scale = std::abs(c.pose.scale - t.pose.scale);
    dev.within_tolerance =
        dev.position <= tol.pos_eps && dev.rotation <= tol.rot_eps && dev.scale <= tol.scale_eps;
    report.pairs.push_back(std::move(dev));
  }

  for (const auto& [entry, indices] : pool) {
    for (std::size_t i : indices) report.extras.push_back(candidates[i].instance_id);
  }
  std::sort(report.extras.begin(), report.extras.end());

  report.passed = report.missing.empty() && report.extras.empty() &&
                  std::all_of(report.pairs.begin(), report.pairs.end(),
                              [](const PairDeviation& p) { return p.within_tolerance; });
  return report;
}

std::string_view builtin_practice_document() { return embedded::kPracticeScene; }

const Scene& practice_scene() {
  static const Scene scene = decode_scene(embedded::kPracticeScene);
  return scene;
}

}  // namespace lotforge
