#pragma once

#include "lotforge/scene.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lotforge {

struct MatchTolerances {
  double pos_eps = 1.0;     // meters
  double rot_eps = 20.0;    // degrees
  double scale_eps = 0.25;  // unitless
};

struct PairDeviation {
  std::string target_id;
  std::string candidate_id;
  double position = 0.0;  // meters
  double rotation = 0.0;  // smallest angular difference, degrees
  double scale = 0.0;     // absolute difference
  bool within_tolerance = false;
};

struct MatchReport {
  bool passed = false;
  std::vector<PairDeviation> pairs;  // one per matched target, in target id order
  std::vector<std::string> missing;  // target ids with no counterpart
  std::vector<std::string> extras;   // candidate ids left over
};

/// Greedy one-to-one matching of candidate instances to target instances of
/// the same entry: targets are visited in ascending id order and each takes
/// the nearest unused candidate (ties go to the smaller candidate id). Passes
/// only when nothing is missing, nothing is extra and every pair is within
/// tolerance.
MatchReport match_replication(const Scene& candidate, const Scene& target,
                              const MatchTolerances& tol = {});

/// Throws Error(Config) unless every tolerance is strictly positive.
void check_tolerances(const MatchTolerances& tol);

/// The shipped practice target as a canonical scene document.
std::string_view builtin_practice_document();
const Scene& practice_scene();

}  // namespace lotforge
