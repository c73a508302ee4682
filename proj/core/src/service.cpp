#include "lotforge/service.hpp"

#include "lotforge/scene_codec.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <mutex>
#include <random>

namespace lotforge {

namespace {

using OJson = nlohmann::ordered_json;

nlohmann::json parse_body(std::string_view document, std::string_view what) {
  nlohmann::json j = nlohmann::json::parse(document, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorKind::Integrity, "stored " + std::string(what) + " is not a JSON object");
  }
  return j;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps every residue equally likely.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t r = 0;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<ValidationIssue> issues)
    : Error(ErrorKind::Validation, "scene has validation errors"), issues_(std::move(issues)) {}

ServiceOptions options_from_environment() {
  ServiceOptions opts;
  if (const char* dir = std::getenv("LOTFORGE_DATA_DIR"); dir && *dir) opts.data_dir = dir;
  if (const char* seed = std::getenv("LOTFORGE_SEED"); seed && *seed) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(seed, &end, 10);
    if (end == seed || *end != '\0') throw Error(ErrorKind::Config, "LOTFORGE_SEED must be an unsigned integer");
    opts.seed = v;
  }
  return opts;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
  return items;
}

// --- documents -------------------------------------------------------------

std::string assignment_json(const Assignment& a) {
  OJson j;
  j["participant_id"] = a.participant_id;
  j["group"] = std::string(1, a.group);
  j["scenario_order"] = a.scenario_order;
  j["seed"] = a.seed;
  j["issued_at"] = a.issued_at;
  return j.dump();
}

Assignment parse_assignment(std::string_view document) {
  const nlohmann::json j = parse_body(document, "assignment");
  Assignment a;
  a.participant_id = j.at("participant_id").get<std::string>();
  a.group = j.at("group").get<std::string>().at(0);
  a.scenario_order = j.at("scenario_order").get<std::vector<std::string>>();
  a.seed = j.at("seed").get<std::uint64_t>();
  a.issued_at = j.value("issued_at", "");
  return a;
}

std::string submission_json(const Submission& s) {
  OJson j;
  j["submission_id"] = s.submission_id;
  j["participant_id"] = s.participant_id;
  j["scenario_id"] = s.scenario_id;
  j["scene_id"] = s.scene_id;
  j["screenshot"] = s.screenshot ? OJson(*s.screenshot) : OJson(nullptr);
  j["plan_svg"] = s.plan_svg;
  j["created_at"] = s.created_at;
  return j.dump();
}

Submission parse_submission(std::string_view document) {
  const nlohmann::json j = parse_body(document, "submission");
  Submission s;
  s.submission_id = j.value("submission_id", "");
  s.participant_id = j.at("participant_id").get<std::string>();
  s.scenario_id = j.at("scenario_id").get<std::string>();
  s.scene_id = j.at("scene_id").get<std::string>();
  if (j.contains("screenshot") && j["screenshot"].is_string()) s.screenshot = j["screenshot"].get<std::string>();
  s.plan_svg = j.value("plan_svg", "");
  s.created_at = j.value("created_at", "");
  return s;
}

std::string match_report_json(const MatchReport& report) {
  OJson j;
  j["passed"] = report.passed;
  OJson pairs = OJson::array();
  for (const PairDeviation& p : report.pairs) {
    pairs.push_back({{"target_id", p.target_id},
                     {"candidate_id", p.candidate_id},
                     {"position", p.position},
                     {"rotation", p.rotation},
                     {"scale", p.scale},
                     {"within_tolerance", p.within_tolerance}});
  }
  j["matched_pairs"] = std::move(pairs);
  j["missing"] = report.missing;
  j["extras"] = report.extras;
  return j.dump();
}

std::string issues_json(const std::vector<ValidationIssue>& issues) {
  OJson arr = OJson::array();
  for (const ValidationIssue& i : issues) {
    OJson j;
    j["severity"] = to_string(i.severity);
    j["code"] = i.code;
    j["instance_id"] = i.instance_id ? OJson(*i.instance_id) : OJson(nullptr);
    j["message"] = i.message;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

// --- service ---------------------------------------------------------------

DesignService::DesignService(ServiceOptions options)
    : options_(std::move(options)),
      catalog_(options_.catalog ? options_.catalog : &builtin_catalog()),
      store_(options_.data_dir) {
  check_config(options_.config);
  for (const StoreRecord& r : store_.list(RecordKind::Assignment)) {
    Assignment a = parse_assignment(r.body);
    assignments_.emplace(a.participant_id, std::move(a));
  }
  for (const StoreRecord& r : store_.list(RecordKind::Submission)) {
    const Submission s = parse_submission(r.body);
    latest_[{s.participant_id, s.scenario_id}] = r.id;
  }
}

const Scene& DesignService::practice() const { return practice_scene(); }

Assignment DesignService::assign(const std::string& participant_id, std::optional<std::uint64_t> seed) {
  if (participant_id.empty()) throw Error(ErrorKind::Validation, "participant_id must not be empty");
  std::unique_lock lock(index_mutex_);
  if (auto it = assignments_.find(participant_id); it != assignments_.end()) return it->second;

  static constexpr char kGroups[] = {'A', 'B', 'C'};
  Assignment a;
  a.participant_id = participant_id;
  a.group = kGroups[assignments_.size() % 3];
  a.seed = seed.value_or(options_.seed ^ fnv1a(participant_id));
  std::vector<std::string> ids;
  for (const Scenario& s : scenarios(*catalog_)) {
    if (s.group == a.group) ids.push_back(s.id);
  }
  a.scenario_order = seeded_shuffle(std::move(ids), a.seed);
  a.issued_at = utc_timestamp();
  store_.append(RecordKind::Assignment, assignment_json(a));
  assignments_.emplace(participant_id, a);
  return a;
}

std::optional<Assignment> DesignService::find_assignment(const std::string& participant_id) const {
  std::shared_lock lock(index_mutex_);
  auto it = assignments_.find(participant_id);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

std::string DesignService::save_scene(const Scene& scene) {
  auto issues = validate_scene(scene, *catalog_);
  if (has_errors(issues)) throw ValidationFailed(std::move(issues));
  return store_.append(RecordKind::Scene, encode_scene(scene)).id;
}

Scene DesignService::get_scene(const std::string& scene_id) const {
  auto rec = store_.get(scene_id);
  if (!rec || rec->kind != RecordKind::Scene) throw Error(ErrorKind::NotFound, "no scene '" + scene_id + "'");
  return decode_scene(rec->body);
}

MatchReport DesignService::validate_practice(const Scene& candidate) const {
  return match_replication(candidate, practice());
}

ScoreResult DesignService::score(const std::string& scene_id) const {
  return score_scene(get_scene(scene_id), *catalog_, options_.config);
}

std::string DesignService::plan(const std::string& scene_id, const RenderOptions& options) const {
  return render_plan(get_scene(scene_id), *catalog_, options);
}

Submission DesignService::record_submission(const std::string& participant_id, const std::string& scenario_id,
                                            const std::string& scene_id, std::optional<std::string> screenshot) {
  const Scene scene = get_scene(scene_id);
  std::unique_lock lock(index_mutex_);
  auto it = assignments_.find(participant_id);
  if (it == assignments_.end()) {
    throw Error(ErrorKind::Conflict, "participant '" + participant_id + "' has no assignment");
  }
  const auto& order = it->second.scenario_order;
  if (std::find(order.begin(), order.end(), scenario_id) == order.end()) {
    throw Error(ErrorKind::Conflict, "scenario '" + scenario_id + "' is not assigned to participant '" +
                                         participant_id + "'");
  }
  Submission s;
  s.participant_id = participant_id;
  s.scenario_id = scenario_id;
  s.scene_id = scene_id;
  s.screenshot = std::move(screenshot);
  s.plan_svg = render_plan(scene, *catalog_, RenderOptions{.show_shadows = true, .sun = std::nullopt, .legend = true});
  const StoreRecord rec = store_.append(RecordKind::Submission, submission_json(s));
  s.submission_id = rec.id;
  s.created_at = rec.created_at;
  latest_[{participant_id, scenario_id}] = rec.id;
  return s;
}

Submission DesignService::get_submission(const std::string& submission_id) const {
  auto rec = store_.get(submission_id);
  if (!rec || rec->kind != RecordKind::Submission) {
    throw Error(ErrorKind::NotFound, "no submission '" + submission_id + "'");
  }
  Submission s = parse_submission(rec->body);
  s.submission_id = rec->id;
  s.created_at = rec->created_at;
  return s;
}

std::optional<Submission> DesignService::latest_submission(const std::string& participant_id,
                                                           const std::string& scenario_id) const {
  std::string id;
  {
    std::shared_lock lock(index_mutex_);
    auto it = latest_.find({participant_id, scenario_id});
    if (it == latest_.end()) return std::nullopt;
    id = it->second;
  }
  return get_submission(id);
}

}  // namespace lotforge
