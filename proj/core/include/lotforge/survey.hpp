#pragma once

#include "lotforge/catalog.hpp"
#include "lotforge/csv.hpp"
#include "lotforge/metric_id.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lotforge {

// ---------------------------------------------------------------------------
// Ratings
// ---------------------------------------------------------------------------

struct RatingRecord {
  std::string rater_id;
  std::string design_id;
  std::string scenario_id;
  MetricId metric = MetricId::Shade;
  int value = 1;  // 1..7
  bool is_attention_check = false;
  std::optional<int> expected_value;  // present iff is_attention_check
  std::size_t row = 0;                // source line, 0 when built in code
};

struct RatingDataset {
  std::vector<RatingRecord> records;
};

inline constexpr std::string_view kRatingsHeader =
    "rater_id,design_id,scenario_id,metric,value,is_attention_check,expected_value";

/// Validates rows against the ratings schema. Throws RowError citing the
/// offending source line for out-of-range values, unknown metrics or
/// scenarios, and attention rows without an expected value; throws
/// Error(Ingestion) for a missing column or a table without data rows.
RatingDataset ingest_ratings(const CsvTable& table);
RatingDataset ingest_ratings_csv(std::string_view text);

std::string ratings_to_csv(const RatingDataset& dataset);

struct FilterResult {
  RatingDataset dataset;              // surviving raters, attention rows dropped
  std::vector<std::string> excluded;  // sorted rater ids
};

/// A rater is excluded iff they answered two or more attention checks with a
/// value other than the expected one.
FilterResult filter_raters(const RatingDataset& dataset, int max_failures = 1);

using MetricMeans = std::array<double, kMetricCount>;

struct DesignMean {
  std::string scenario_id;
  MetricMeans means{};
  std::array<int, kMetricCount> counts{};
};

/// design_id -> per-metric mean. Attention rows are ignored. Throws
/// Error(MissingData) naming the (design, metric) with no ratings and
/// Error(Ingestion) when one design is tied to two scenarios.
std::map<std::string, DesignMean> design_means(const RatingDataset& dataset);

struct ScenarioMean {
  MetricMeans means{};
  int n_designs = 0;
};

using ScenarioMeans = std::map<std::string, ScenarioMean>;

/// Unweighted mean of design means per scenario. Every id in `required` must
/// have at least one design, else Error(MissingData).
ScenarioMeans scenario_means(const std::map<std::string, DesignMean>& designs,
                             std::span<const std::string> required = {});

struct TopMetrics {
  std::vector<MetricId> argmax_set;  // metric order
  std::vector<MetricId> top3;        // descending mean, ties (within eps) by metric order
};

TopMetrics top_metrics(const MetricMeans& means, double eps = 1e-9);
std::map<std::string, TopMetrics> top_metrics(const ScenarioMeans& means, double eps = 1e-9);

struct ScenarioAgreement {
  std::string scenario_id;
  std::vector<MetricId> argmax_set;
  std::vector<MetricId> designated;
  std::vector<MetricId> top3;
  bool agrees = false;               // argmax_set intersects designated
  bool designated_in_top3 = false;   // designated intersects top3
  std::string note;
};

struct AgreementReport {
  std::vector<ScenarioAgreement> scenarios;  // scenario id order
  int agree_count = 0;
  int total = 0;

  std::vector<std::string> disagreeing() const;
};

/// Throws Error(Config) when a scenario in `means` has no designated metrics
/// in the catalog.
AgreementReport agreement_report(const ScenarioMeans& means, const Catalog& catalog, double eps = 1e-9);

// ---------------------------------------------------------------------------
// Free-text responses
// ---------------------------------------------------------------------------

struct ResponseRecord {
  std::string rater_id;
  std::string design_id;
  std::string scenario_id;
  std::string text;
  std::size_t row = 0;
};

inline constexpr std::string_view kResponsesHeader = "rater_id,design_id,scenario_id,text";

std::vector<ResponseRecord> ingest_responses(const CsvTable& table);
std::vector<ResponseRecord> ingest_responses_csv(std::string_view text);

enum class DiscardReason { Short, MetricList };

std::string_view to_string(DiscardReason r);

struct DiscardedResponse {
  ResponseRecord response;
  DiscardReason reason = DiscardReason::Short;
};

struct PrefilterResult {
  std::vector<ResponseRecord> retained;
  std::vector<DiscardedResponse> discarded;
  // Retained responses whose grammar looks hard to follow; for human review
  // only, never discarded automatically.
  std::vector<ResponseRecord> flagged;
};

/// Discards responses of fewer than four whitespace-delimited tokens and
/// responses made only of metric names and stopwords.
PrefilterResult prefilter_responses(std::span<const ResponseRecord> responses);

enum class Capture { Direct, Indirect, Uncaptured };

std::string_view to_string(Capture c);

/// Naive suffix stemmer: strips one of "ing", "ed", "s".
std::string stem(std::string_view word);

/// Lowercased alphanumeric tokens; apostrophes are dropped, other
/// punctuation splits.
std::vector<std::string> tokenize(std::string_view text);

/// Direct when a direct phrase occurs in the normalized text, else indirect
/// when any token stem equals an indirect term's stem, else uncaptured.
Capture classify_response(std::string_view text, const Lexicon& lexicon);

struct CaptureCounts {
  int direct = 0;
  int indirect = 0;
  int uncaptured = 0;
  int discarded = 0;

  int retained() const { return direct + indirect + uncaptured; }
  friend bool operator==(const CaptureCounts&, const CaptureCounts&) = default;
};

using CaptureReport = std::map<std::string, CaptureCounts>;

/// Scenarios without a lexicon count every response as uncaptured.
CaptureReport code_responses(std::span<const ResponseRecord> retained,
                             const std::map<std::string, Lexicon>& lexicons);
CaptureReport code_responses(const PrefilterResult& prefiltered, const Catalog& catalog);

std::map<std::string, Lexicon> lexicons_from(const Catalog& catalog);

// ---------------------------------------------------------------------------
// Whole pipeline and reports
// ---------------------------------------------------------------------------

struct AnalysisReport {
  std::vector<std::string> excluded_raters;
  std::size_t rows_in = 0;
  std::size_t rows_used = 0;
  ScenarioMeans means;
  AgreementReport agreement;
  std::optional<CaptureReport> capture;
  std::vector<ResponseRecord> flagged_responses;
};

AnalysisReport run_analysis(const RatingDataset& ratings, const Catalog& catalog,
                            const std::vector<ResponseRecord>* responses = nullptr);

/// Markdown-style table: **bold** marks the argmax set, _italic_ the
/// designated metrics.
std::string format_analysis_text(const AnalysisReport& report, const Catalog& catalog);
std::string analysis_json(const AnalysisReport& report, const Catalog& catalog);

}  // namespace lotforge
