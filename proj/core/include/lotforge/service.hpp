#pragma once

#include "lotforge/catalog.hpp"
#include "lotforge/error.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/plan_render.hpp"
#include "lotforge/replication.hpp"
#include "lotforge/scene.hpp"
#include "lotforge/store.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace lotforge {

struct Assignment {
  std::string participant_id;
  char group = 'A';
  std::vector<std::string> scenario_order;  // permutation of the group's four scenarios
  std::uint64_t seed = 0;
  std::string issued_at;
};

struct Submission {
  std::string submission_id;
  std::string participant_id;
  std::string scenario_id;
  std::string scene_id;
  std::optional<std::string> screenshot;  // opaque client-captured image
  std::string plan_svg;                   // rendered by the server at submission time
  std::string created_at;
};

/// Scene rejected by validate_scene; carries the full issue list.
class ValidationFailed : public Error {
public:
  explicit ValidationFailed(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
  std::vector<ValidationIssue> issues_;
};

struct ServiceOptions {
  std::filesystem::path data_dir = "lotforge-data";
  std::uint64_t seed = 0;              // mixed into every default assignment seed
  const Catalog* catalog = nullptr;    // builtin catalog when null
  ScoreConfig config{};
};

/// Reads LOTFORGE_DATA_DIR and LOTFORGE_SEED, falling back to the defaults.
ServiceOptions options_from_environment();

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

/// Fisher-Yates shuffle driven by mt19937_64 with rejection sampling, so the
/// result depends only on the seed.
std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed);

class DesignService {
public:
  explicit DesignService(ServiceOptions options);

  const Catalog& catalog() const { return *catalog_; }
  const ScoreConfig& config() const { return options_.config; }
  const Scene& practice() const;

  /// Idempotent per participant. Group is round-robin by assignment count;
  /// the order is a seeded shuffle of the group's scenarios. Without an
  /// explicit seed the service seed is mixed with a hash of the participant.
  Assignment assign(const std::string& participant_id, std::optional<std::uint64_t> seed = std::nullopt);
  std::optional<Assignment> find_assignment(const std::string& participant_id) const;

  /// Throws ValidationFailed when the scene has validation errors.
  std::string save_scene(const Scene& scene);
  /// Throws Error(NotFound).
  Scene get_scene(const std::string& scene_id) const;

  MatchReport validate_practice(const Scene& candidate) const;

  ScoreResult score(const std::string& scene_id) const;
  std::string plan(const std::string& scene_id, const RenderOptions& options) const;

  /// Throws Error(NotFound) for an unknown scene and Error(Conflict) when the
  /// scenario is not in the participant's assignment. Resubmission appends a
  /// new record; the latest one wins.
  Submission record_submission(const std::string& participant_id, const std::string& scenario_id,
                               const std::string& scene_id,
                               std::optional<std::string> screenshot = std::nullopt);
  Submission get_submission(const std::string& submission_id) const;
  std::optional<Submission> latest_submission(const std::string& participant_id,
                                              const std::string& scenario_id) const;

  const RecordStore& store() const { return store_; }

private:
  ServiceOptions options_;
  const Catalog* catalog_;
  RecordStore store_;
  mutable std::shared_mutex index_mutex_;
  std::map<std::string, Assignment> assignments_;  // by participant
  std::map<std::pair<std::string, std::string>, std::string> latest_;  // (participant, scenario) -> submission
};

std::string assignment_json(const Assignment& a);
Assignment parse_assignment(std::string_view document);
std::string submission_json(const Submission& s);
Submission parse_submission(std::string_view document);
std::string match_report_json(const MatchReport& report);
std::string issues_json(const std::vector<ValidationIssue>& issues);

}  // namespace lotforge
