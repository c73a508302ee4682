#include "lotforge/survey.hpp"

#include "lotforge/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <unordered_map>

namespace lotforge {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_scenario_id(std::string_view s) {
  return s.size() == 2 && (s[0] == 'A' || s[0] == 'B' || s[0] == 'C') && s[1] >= '1' && s[1] <= '4';
}

std::vector<std::size_t> require_columns(const CsvTable& table, std::string_view header) {
  std::vector<std::size_t> cols;
  std::size_t start = 0;
  while (start <= header.size()) {
    const auto comma = header.find(',', start);
    const std::string_view name =
        header.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto idx = table.column(name);
    if (!idx) throw Error(ErrorKind::Ingestion, "missing column '" + std::string(name) + "'");
    cols.push_back(*idx);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cols;
}

const std::string& field(const CsvRow& row, std::size_t col, std::size_t width) {
  if (row.fields.size() != width) {
    throw RowError(ErrorKind::Ingestion,
                   "row " + std::to_string(row.line) + ": expected " + std::to_string(width) +
                       " fields, found " + std::to_string(row.fields.size()),
                   row.line);
  }
  return row.fields[col];
}

[[noreturn]] void row_error(const CsvRow& row, const std::string& why) {
  throw RowError(ErrorKind::Ingestion, "row " + std::to_string(row.line) + ": " + why, row.line);
}

bool contains_metric(const std::vector<MetricId>& set, MetricId m) {
  return std::find(set.begin(), set.end(), m) != set.end();
}

bool intersects(const std::vector<MetricId>& a, const std::vector<MetricId>& b) {
  return std::any_of(a.begin(), a.end(), [&](MetricId m) { return contains_metric(b, m); });
}

const std::set<std::string>& metric_words() {
  static const std::set<std::string> words = {
      "shade", "play",   "comfort",    "safety",        "access",       "nature",
      "recreation", "entertainment", "sociability", "shady", "comfortable", "safe",
      "social", "natural", "recreational", "entertaining"};
  return words;
}

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "a",    "an",   "and",  "or",   "the",  "of",    "to",    "with", "for",  "is",
      "are",  "it",   "its",  "very", "good", "great", "high",  "low",  "lots", "much",
      "some", "plus", "also", "too",  "nice", "all",   "more",  "most", "on",   "in"};
  return words;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool looks_garbled(std::string_view text) {
  std::vector<std::string> sentences;
  std::string cur;
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?') {
      if (!trim(cur).empty()) sentences.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) sentences.push_back(trim(cur));
  if (sentences.size() < 2) return false;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (tokenize(sentences[i]).size() <= 3) return true;
    if (i > 0 && std::islower(static_cast<unsigned char>(sentences[i][0]))) return true;
  }
  return false;
}

std::string normalized(std::string_view text) {
  std::string out;
  for (const std::string& t : tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Extreme {
  std::string scenario;
  MetricId metric = MetricId::Shade;
  double mean = 0.0;
};

struct Extremes {
  Extreme max;
  Extreme min;
  Extreme min_sociability;
};

std::optional<Extremes> extremes_of(const ScenarioMeans& means) {
  if (means.empty()) return std::nullopt;
  Extremes e;
  bool first = true;
  for (const auto& [id, row] : means) {
    for (MetricId m : kAllMetrics) {
      const double v = row.means[index_of(m)];
      if (first || v > e.max.mean) e.max = {id, m, v};
      if (first || v < e.min.mean) e.min = {id, m, v};
      first = false;
    }
  }
  bool first_soc = true;
  for (const auto& [id, row] : means) {
    const double v = row.means[index_of(MetricId::Sociability)];
    if (first_soc || v < e.min_sociability.mean) e.min_sociability = {id, MetricId::Sociability, v};
    first_soc = false;
  }
  return e;
}

std::string metric_set(const std::vector<MetricId>& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += metric_key(set[i]);
  }
  return out + "}";
}

nlohmann::ordered_json metric_list_json(const std::vector<MetricId>& set) {
  auto arr = nlohmann::ordered_json::array();
  for (MetricId m : set) arr.push_back(metric_key(m));
  return arr;
}

}  // namespace

// --- ratings ---------------------------------------------------------------

RatingDataset ingest_ratings(const CsvTable& table) {
  const auto cols = require_columns(table, kRatingsHeader);
  if (table.rows.empty()) throw Error(ErrorKind::Ingestion, "ratings table has no data rows");
  const std::size_t width = table.header.size();

  RatingDataset out;
  out.records.reserve(table.rows.size());
  for (const CsvRow& row : table.rows) {
    RatingRecord r;
    r.row = row.line;
    r.rater_id = trim(field(row, cols[0], width));
    r.design_id = trim(field(row, cols[1], width));
    r.scenario_id = trim(field(row, cols[2], width));
    const std::string metric = trim(field(row, cols[3], width));
    const std::string value = trim(field(row, cols[4], width));
    const std::string attention = lower(trim(field(row, cols[5], width)));
    const std::string expected = trim(field(row, cols[6], width));

    if (r.rater_id.empty()) row_error(row, "rater_id is empty");
    if (r.design_id.empty()) row_error(row, "design_id is empty");
    auto m = parse_metric(metric);
    if (!m) row_error(row, "unknown metric '" + metric + "'");
    r.metric = *m;
    auto v = parse_int(value);
    if (!v || *v < 1 || *v > 7) row_error(row, "value '" + value + "' is not an integer in 1..7");
    r.value = *v;

    if (attention == "true" || attention == "1" || attention == "yes") {
      r.is_attention_check = true;
    } else if (attention == "false" || attention == "0" || attention == "no" || attention.empty()) {
      r.is_attention_check = false;
    } else {
      row_error(row, "is_attention_check '" + attention + "' is not a boolean");
    }

    if (r.is_attention_check) {
      auto e = parse_int(expected);
      if (!e) row_error(row, "attention check without expected_value");
      if (*e < 1 || *e > 7) row_error(row, "expected_value '" + expected + "' is not in 1..7");
      r.expected_value = *e;
    } else {
      if (!expected.empty()) row_error(row, "expected_value given on a non-attention row");
      if (!is_scenario_id(r.scenario_id)) row_error(row, "unknown scenario '" + r.scenario_id + "'");
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

RatingDataset ingest_ratings_csv(std::string_view text) { return ingest_ratings(parse_csv(text)); }

std::string ratings_to_csv(const RatingDataset& dataset) {
  std::string out(kRatingsHeader);
  out += '\n';
  for (const RatingRecord& r : dataset.records) {
    out += csv_escape(r.rater_id) + ',' + csv_escape(r.design_id) + ',' + csv_escape(r.scenario_id) +
           ',' + std::string(metric_key(r.metric)) + ',' + std::to_string(r.value) + ',' +
           (r.is_attention_check ? "true" : "false") + ',' +
           (r.expected_value ? std::to_string(*r.expected_value) : "") + '\n';
  }
  return out;
}

FilterResult filter_raters(const RatingDataset& dataset, int max_failures) {
  std::unordered_map<std::string, int> failures;
  for (const RatingRecord& r : dataset.records) {
    if (r.is_attention_check && r.expected_value && r.value != *r.expected_value) ++failures[r.rater_id];
  }
  std::set<std::string> excluded;
  for (const auto& [rater, count] : failures) {
    if (count > max_failures) excluded.insert(rater);
  }
  FilterResult out;
  out.excluded.assign(excluded.begin(), excluded.end());
  for (const RatingRecord& r : dataset.records) {
    if (r.is_attention_check || excluded.contains(r.rater_id)) continue;
    out.dataset.records.push_back(r);
  }
  return out;
}

std::map<std::string, DesignMean> design_means(const RatingDataset& dataset) {
  struct Acc {
    std::string scenario_id;
    std::array<long, kMetricCount> sums{};
    std::array<int, kMetricCount> counts{};
  };
  std::map<std::string, Acc> acc;
  for (const RatingRecord& r : dataset.records) {
    if (r.is_attention_check) continue;
    auto [it, inserted] = acc.try_emplace(r.design_id);
    if (inserted) {
      it->second.scenario_id = r.scenario_id;
    } else if (it->second.scenario_id != r.scenario_id) {
      throw Error(ErrorKind::Ingestion, "design '" + r.design_id + "' appears under scenarios '" +
                                            it->second.scenario_id + "' and '" + r.scenario_id + "'");
    }
    it->second.sums[index_of(r.metric)] += r.value;
    ++it->second.counts[index_of(r.metric)];
  }
  std::map<std::string, DesignMean> out;
  for (const auto& [design, a] : acc) {
    DesignMean dm;
    dm.scenario_id = a.scenario_id;
    dm.counts = a.counts;
    for (MetricId m : kAllMetrics) {
      const std::size_t i = index_of(m);
      if (a.counts[i] == 0) {
        throw Error(ErrorKind::MissingData, "design '" + design + "' has no ratings for metric '" +
                                                std::string(metric_key(m)) + "'");
      }
      dm.means[i] = static_cast<double>(a.sums[i]) / a.counts[i];
    }
    out.emplace(design, dm);
  }
  return out;
}

ScenarioMeans scenario_means(const std::map<std::string, DesignMean>& designs,
                             std::span<const std::string> required) {
  ScenarioMeans out;
  for (const auto& [design, dm] : designs) {
    ScenarioMean& s = out[dm.scenario_id];
    for (std::size_t i = 0; i < kMetricCount; ++i) s.means[i] += dm.means[i];
    ++s.n_designs;
  }
  for (auto& [id, s] : out) {
    for (double& v : s.means) v /= s.n_designs;
  }
  for (const std::string& id : required) {
    if (!out.contains(id)) throw Error(ErrorKind::MissingData, "scenario '" + id + "' has no designs");
  }
  return out;
}

TopMetrics top_metrics(const MetricMeans& means, double eps) {
  TopMetrics t;
  const double best = *std::max_element(means.begin(), means.end());
  for (MetricId m : kAllMetrics) {
    if (means[index_of(m)] >= best - eps) t.argmax_set.push_back(m);
  }
  std::vector<MetricId> order(kAllMetrics.begin(), kAllMetrics.end());
  // Means are compared on an eps grid so rounding noise cannot reorder ties.
  const auto key = [&](MetricId m) {
    const double v = means[index_of(m)];
    return eps > 0.0 ? static_cast<double>(std::llround(v / eps)) : v;
  };
  std::stable_sort(order.begin(), order.end(), [&](MetricId a, MetricId b) { return key(a) > key(b); });
  t.top3.assign(order.begin(), order.begin() + 3);
  return t;
}

std::map<std::string, TopMetrics> top_metrics(const ScenarioMeans& means, double eps) {
  std::map<std::string, TopMetrics> out;
  for (const auto& [id, row] : means) out.emplace(id, top_metrics(row.means, eps));
  return out;
}

std::vector<std::string> AgreementReport::disagreeing() const {
  std::vector<std::string> out;
  for (const ScenarioAgreement& s : scenarios) {
    if (!s.agrees) out.push_back(s.scenario_id);
  }
  return out;
}

AgreementReport agreement_report(const ScenarioMeans& means, const Catalog& catalog, double eps) {
  AgreementReport report;
  for (const auto& [id, row] : means) {
    const Scenario* scenario = catalog.find_scenario(id);
    if (!scenario || scenario->designated_metrics.empty()) {
      throw Error(ErrorKind::Config, "no designated metrics for scenario '" + id + "'");
    }
    const TopMetrics top = top_metrics(row.means, eps);
    ScenarioAgreement a;
    a.scenario_id = id;
    a.argmax_set = top.argmax_set;
    a.top3 = top.top3;
    a.designated = scenario->designated_metrics;
    a.agrees = intersects(a.argmax_set, a.designated);
    a.designated_in_top3 = intersects(a.top3, a.designated);
    a.note = scenario->designated_note;
    if (a.agrees) ++report.agree_count;
    ++report.total;
    report.scenarios.push_back(std::move(a));
  }
  return report;
}

// --- responses -------------------------------------------------------------

std::vector<ResponseRecord> ingest_responses(const CsvTable& table) {
  const auto cols = require_columns(table, kResponsesHeader);
  const std::size_t width = table.header.size();
  std::vector<ResponseRecord> out;
  for (const CsvRow& row : table.rows) {
    ResponseRecord r;
    r.row = row.line;
    r.rater_id = trim(field(row, cols[0], width));
    r.design_id = trim(field(row, cols[1], width));
    r.scenario_id = trim(field(row, cols[2], width));
    r.text = field(row, cols[3], width);
    if (!is_scenario_id(r.scenario_id)) row_error(row, "unknown scenario '" + r.scenario_id + "'");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ResponseRecord> ingest_responses_csv(std::string_view text) {
  return ingest_responses(parse_csv(text));
}

std::string_view to_string(DiscardReason r) { return r == DiscardReason::Short ? "short" : "metric-list"; }

std::string_view to_string(Capture c) {
  switch (c) {
    case Capture::Direct: return "direct";
    case Capture::Indirect: return "indirect";
    case Capture::Uncaptured: return "uncaptured";
  }
  return "uncaptured";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80) {
      cur += static_cast<char>(std::tolower(c));
    } else if (c == '\'') {
      continue;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string stem(std::string_view word) {
  std::string w = lower(word);
  const auto ends = [&](std::string_view suffix) {
    return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends("ing") && w.size() >= 6) {
    w.resize(w.size() - 3);
  } else if (ends("ed") && w.size() >= 5) {
    w.resize(w.size() - 2);
  } else if (ends("s") && !ends("ss") && w.size() >= 4) {
    w.resize(w.size() - 1);
  }
  return w;
}

PrefilterResult prefilter_responses(std::span<const ResponseRecord> responses) {
  PrefilterResult out;
  for (const ResponseRecord& r : responses) {
    const auto tokens = tokenize(r.text);
    const auto words = split_whitespace(r.text);
    const bool only_metrics =
        std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) {
          return metric_words().contains(t) || stopwords().contains(t);
        });
    if (tokens.empty()) {
      out.discarded.push_back({r, DiscardReason::Short});
    } else if (only_metrics) {
      out.discarded.push_back({r, DiscardReason::MetricList});
    } else if (words.size() < 4) {
      out.discarded.push_back({r, DiscardReason::Short});
    } else {
      out.retained.push_back(r);
      if (looks_garbled(r.text)) out.flagged.push_back(r);
    }
  }
  return out;
}

Capture classify_response(std::string_view text, const Lexicon& lexicon) {
  const std::string norm = normalized(text);
  for (const std::string& phrase : lexicon.direct) {
    const std::string p = normalized(phrase);
    if (!p.empty() && norm.find(p) != std::string::npos) return Capture::Direct;
  }
  std::set<std::string> stems;
  for (const std::string& t : tokenize(text)) stems.insert(stem(t));
  for (const std::string& term : lexicon.indirect) {
    if (stems.contains(stem(term))) return Capture::Indirect;
  }
  return Capture::Uncaptured;
}

CaptureReport code_responses(std::span<const ResponseRecord> retained,
                             const std::map<std::string, Lexicon>& lexicons) {
  CaptureReport report;
  static const Lexicon kEmpty;
  for (const ResponseRecord& r : retained) {
    auto it = lexicons.find(r.scenario_id);
    const Lexicon& lex = it == lexicons.end() ? kEmpty : it->second;
    CaptureCounts& c = report[r.scenario_id];
    switch (classify_response(r.text, lex)) {
      case Capture::Direct: ++c.direct; break;
      case Capture::Indirect: ++c.indirect; break;
      case Capture::Uncaptured: ++c.uncaptured; break;
    }
  }
  return report;
}

CaptureReport code_responses(const PrefilterResult& prefiltered, const Catalog& catalog) {
  CaptureReport report = code_responses(prefiltered.retained, lexicons_from(catalog));
  for (const DiscardedResponse& d : prefiltered.discarded) ++report[d.response.scenario_id].discarded;
  return report;
}

std::map<std::string, Lexicon> lexicons_from(const Catalog& catalog) {
  std::map<std::string, Lexicon> out;
  for (const Scenario& s : catalog.scenario_list()) out.emplace(s.id, s.lexicon);
  return out;
}

// --- pipeline --------------------------------------------------------------

AnalysisReport run_analysis(const RatingDataset& ratings, const Catalog& catalog,
                            const std::vector<ResponseRecord>* responses) {
  AnalysisReport report;
  report.rows_in = ratings.records.size();
  FilterResult filtered = filter_raters(ratings);
  report.excluded_raters = filtered.excluded;
  report.rows_used = filtered.dataset.records.size();
  report.means = scenario_means(design_means(filtered.dataset));
  report.agreement = agreement_report(report.means, catalog);

  if (responses) {
    const std::set<std::string> excluded(report.excluded_raters.begin(), report.excluded_raters.end());
    std::vector<ResponseRecord> kept;
    for (const ResponseRecord& r : *responses) {
      if (!excluded.contains(r.rater_id)) kept.push_back(r);
    }
    const PrefilterResult pre = prefilter_responses(kept);
    report.capture = code_responses(pre, catalog);
    report.flagged_responses = pre.flagged;
  }
  return report;
}

std::string format_analysis_text(const AnalysisReport& report, const Catalog& catalog) {
  std::string out;
  out += "Ratings: " + std::to_string(report.rows_in) + " rows read, " +
         std::to_string(report.rows_used) + " used\n";
  out += "Excluded raters (2+ failed attention checks): ";
  if (report.excluded_raters.empty()) {
    out += "none";
  } else {
    for (std::size_t i = 0; i < report.excluded_raters.size(); ++i) {
      if (i) out += ", ";
      out += report.excluded_raters[i];
    }
  }
  out += "\n\n";

  out += "| Scenario | n";
  for (MetricId m : kAllMetrics) out += " | " + std::string(metric_label(m));
  out += " |\n|---|---";
  for (std::size_t i = 0; i < kMetricCount; ++i) out += "|---";
  out += "|\n";
  for (const auto& [id, row] : report.means) {
    const TopMetrics top = top_metrics(row.means);
    const Scenario* scenario = catalog.find_scenario(id);
    out += "| " + id + " | " + std::to_string(row.n_designs);
    for (MetricId m : kAllMetrics) {
      std::string c = cell(row.means[index_of(m)]);
      if (contains_metric(top.argmax_set, m)) c = "**" + c + "**";
      if (scenario && contains_metric(scenario->designated_metrics, m)) c = "_" + c + "_";
      out += " | " + c;
    }
    out += " |\n";
  }
  out += "\n**bold** = highest mean, _italic_ = designated metric\n\n";

  if (auto e = extremes_of(report.means)) {
    out += "Highest mean: " + cell(e->max.mean) + " (" + e->max.scenario + " " +
           std::string(metric_key(e->max.metric)) + ")\n";
    out += "Lowest mean: " + cell(e->min.mean) + " (" + e->min.scenario + " " +
           std::string(metric_key(e->min.metric)) + ")\n";
    out += "Lowest sociability: " + cell(e->min_sociability.mean) + " (" + e->min_sociability.scenario + ")\n\n";
  }

  for (const ScenarioAgreement& a : report.agreement.scenarios) {
    out += a.scenario_id + ": top " + metric_set(a.argmax_set) + ", designated " + metric_set(a.designated) +
           ", top3 " + metric_set(a.top3) + " -> " + (a.agrees ? "agrees" : "differs") +
           (a.agrees ? "" : (a.designated_in_top3 ? " (designated in top three)" : " (designated not in top three)"));
    if (!a.note.empty()) out += " [note: " + a.note + "]";
    out += "\n";
  }
  out += "Agreement: " + std::to_string(report.agreement.agree_count) + " of " +
         std::to_string(report.agreement.total);
  const auto differ = report.agreement.disagreeing();
  if (!differ.empty()) {
    out += " (exceptions:";
    for (std::size_t i = 0; i < differ.size(); ++i) out += (i ? ", " : " ") + differ[i];
    out += ")";
  }
  out += "\n";

  if (report.capture) {
    out += "\n| Scenario | direct | indirect | uncaptured | discarded |\n|---|---|---|---|---|\n";
    for (const auto& [id, c] : *report.capture) {
      out += "| " + id + " | " + std::to_string(c.direct) + " | " + std::to_string(c.indirect) + " | " +
             std::to_string(c.uncaptured) + " | " + std::to_string(c.discarded) + " |\n";
    }
    out += "Responses flagged for grammar review: " + std::to_string(report.flagged_responses.size()) + "\n";
  }
  return out;
}

std::string analysis_json(const AnalysisReport& report, const Catalog& catalog) {
  using OJson = nlohmann::ordered_json;
  OJson doc;
  doc["excluded_raters"] = report.excluded_raters;
  doc["rows_in"] = report.rows_in;
  doc["rows_used"] = report.rows_used;
  OJson table = OJson::array();
  for (const auto& [id, row] : report.means) {
    const TopMetrics top = top_metrics(row.means);
    const Scenario* scenario = catalog.find_scenario(id);
    OJson cells = OJson::array();
    for (MetricId m : kAllMetrics) {
      cells.push_back({{"metric", metric_key(m)},
                       {"mean", row.means[index_of(m)]},
                       {"bold", contains_metric(top.argmax_set, m)},
                       {"italic", scenario && contains_metric(scenario->designated_metrics, m)}});
    }
    table.push_back({{"scenario", id}, {"n_designs", row.n_designs}, {"cells", std::move(cells)}});
  }
  doc["table"] = std::move(table);
  if (auto e = extremes_of(report.means)) {
    const auto ext = [](const Extreme& x) {
      return OJson{{"scenario", x.scenario}, {"metric", metric_key(x.metric)}, {"mean", x.mean}};
    };
    doc["extremes"] = {{"max", ext(e->max)}, {"min", ext(e->min)}, {"min_sociability", ext(e->min_sociability)}};
  }
  OJson agreement;
  agreement["agree_count"] = report.agreement.agree_count;
  agreement["total"] = report.agreement.total;
  agreement["disagreeing"] = report.agreement.disagreeing();
  OJson rows = OJson::array();
  for (const ScenarioAgreement& a : report.agreement.scenarios) {
    OJson j;
    j["scenario"] = a.scenario_id;
    j["argmax_set"] = metric_list_json(a.argmax_set);
    j["designated"] = metric_list_json(a.designated);
    j["top3"] = metric_list_json(a.top3);
    j["agrees"] = a.agrees;
    j["designated_in_top3"] = a.designated_in_top3;
    if (!a.note.empty()) j["note"] = a.note;
    rows.push_back(std::move(j));
  }
  agreement["scenarios"] = std::move(rows);
  doc["agreement"] = std::move(agreement);
  if (report.capture) {
    OJson cap;
    for (const auto& [id, c] : *report.capture) {
      cap[id] = {{"direct", c.direct}, {"indirect", c.indirect}, {"uncaptured", c.uncaptured},
                 {"discarded", c.discarded}};
    }
    doc["capture"] = std::move(cap);
    OJson flagged = OJson::array();
    for (const ResponseRecord& r : report.flagged_responses) {
      flagged.push_back({{"rater_id", r.rater_id}, {"design_id", r.design_id}, {"row", r.row}});
    }
    doc["flagged_responses"] = std::move(flagged);
  } else {
    doc["capture"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace lotforge
