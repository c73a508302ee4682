#include "lotforge/catalog.hpp"
#include "lotforge/error.hpp"
#include "lotforge/survey.hpp"

#include "files.hpp"
#include "reference_means.hpp"

#include <doctest/doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace lotforge;

namespace {

const Catalog& cat() { return builtin_catalog(); }

testing::ReferenceMeans reference() { return testing::load_reference_means(testing::fixture("reference_means.csv").string()); }

ScenarioMeans as_scenario_means(const testing::ReferenceMeans& t) {
  ScenarioMeans out;
  for (const auto& [id, means] : t) out[id] = {means, 28};
  return out;
}

RatingRecord rating(std::string rater, std::string design, std::string scenario, MetricId m, int v) {
  RatingRecord r;
  r.rater_id = std::move(rater);
  r.design_id = std::move(design);
  r.scenario_id = std::move(scenario);
  r.metric = m;
  r.value = v;
  return r;
}

RatingRecord check(std::string rater, int value, int expected) {
  RatingRecord r = rating(std::move(rater), "attn", "A1", MetricId::Shade, value);
  r.is_attention_check = true;
  r.expected_value = expected;
  return r;
}

// Every rater rates every metric of every design in one scenario.
RatingDataset random_dataset(std::mt19937_64& rng, int designs, int raters, int lo = 1, int hi = 7) {
  static const char* ids[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4"};
  std::uniform_int_distribution<int> v(lo, hi), fails(0, 3);
  RatingDataset d;
  for (const char* sc : ids) {
    for (int r = 0; r < raters; ++r) {
      const std::string rater = std::string(sc) + "-r" + std::to_string(r);
      const int failed = fails(rng);
      for (int c = 0; c < 3; ++c) d.records.push_back(check(rater, c < failed ? 2 : 5, 5));
      for (int g = 0; g < designs; ++g) {
        for (MetricId m : kAllMetrics) {
          d.records.push_back(rating(rater, std::string(sc) + "-d" + std::to_string(g), sc, m, v(rng)));
        }
      }
    }
  }
  return d;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("survey") {

TEST_CASE("ratings ingestion") {
  const std::string csv = std::string(kRatingsHeader) +
                          "\nr1,d1,A1,shade,5,false,\n"
                          "r1,attn,A1,comfort,3,true,3\n"
                          "r2,d1,A1,Sociability,7,0,\n";
  const RatingDataset d = ingest_ratings_csv(csv);
  REQUIRE(d.records.size() == 3);
  CHECK(d.records[0].metric == MetricId::Shade);
  CHECK(d.records[0].row == 2);
  CHECK(d.records[1].is_attention_check);
  CHECK(d.records[1].expected_value == 3);
  CHECK(d.records[2].metric == MetricId::Sociability);

  const auto row_of = [](const std::string& body) -> std::size_t {
    try {
      ingest_ratings_csv(std::string(kRatingsHeader) + "\nr1,d1,A1,shade,5,false,\n" + body);
    } catch (const RowError& e) {
      return e.row();
    }
    return 0;
  };
  CHECK(row_of("r1,d1,A1,shade,8,false,\n") == 3);
  CHECK(row_of("r1,d1,A1,shade,0,false,\n") == 3);
  CHECK(row_of("r1,d1,A1,fun,3,false,\n") == 3);
  CHECK(row_of("r1,d1,Z9,shade,3,false,\n") == 3);
  CHECK(row_of("r1,d1,A1,shade,3,true,\n") == 3);
  CHECK(row_of("r1,d1,A1,shade,3,false,4\n") == 3);
  CHECK(row_of("r1,d1,A1,shade,3,maybe,\n") == 3);
  CHECK(row_of("r1,d1,A1,shade,3.5,false,\n") == 3);
  CHECK(row_of("r1,d1,A1,shade\n") == 3);

  CHECK_THROWS_AS(ingest_ratings_csv(std::string(kRatingsHeader) + "\n"), Error);
  CHECK_THROWS_AS(ingest_ratings_csv("rater_id,design_id\nr,d\n"), Error);
}

TEST_CASE("ratings csv round trip") {
  std::mt19937_64 rng(2);
  const RatingDataset d = random_dataset(rng, 2, 2);
  const RatingDataset back = ingest_ratings_csv(ratings_to_csv(d));
  REQUIRE(back.records.size() == d.records.size());
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    CHECK(back.records[i].rater_id == d.records[i].rater_id);
    CHECK(back.records[i].value == d.records[i].value);
    CHECK(back.records[i].metric == d.records[i].metric);
    CHECK(back.records[i].expected_value == d.records[i].expected_value);
  }
}

TEST_CASE("attention checks exclude at two failures") {
  RatingDataset d;
  for (int failed = 0; failed <= 3; ++failed) {
    const std::string rater = "f" + std::to_string(failed);
    for (int c = 0; c < 4; ++c) d.records.push_back(check(rater, c < failed ? 1 : 4, 4));
    d.records.push_back(rating(rater, "d1", "A1", MetricId::Shade, 4));
  }
  const FilterResult f = filter_raters(d);
  CHECK(f.excluded == std::vector<std::string>{"f2", "f3"});
  CHECK(f.dataset.records.size() == 2);
  for (const RatingRecord& r : f.dataset.records) CHECK_FALSE(r.is_attention_check);

  CHECK(filter_raters(d, 2).excluded == std::vector<std::string>{"f3"});
}

TEST_CASE("synthetic attention datasets") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const testing::AttentionCase c = testing::attention_case(seed);
    const FilterResult f = filter_raters(c.dataset);
    CHECK(f.excluded == c.expected_excluded);
    // Idempotence.
    const FilterResult again = filter_raters(f.dataset);
    CHECK(again.excluded.empty());
    CHECK(again.dataset.records.size() == f.dataset.records.size());
  }
}

TEST_CASE("design and scenario means") {
  RatingDataset d;
  for (MetricId m : kAllMetrics) {
    d.records.push_back(rating("r1", "x", "B2", m, 3));
    d.records.push_back(rating("r2", "x", "B2", m, 6));
    d.records.push_back(rating("r1", "y", "B2", m, 7));
  }
  const auto designs = design_means(d);
  CHECK(designs.at("x").means[0] == 4.5);
  CHECK(designs.at("x").counts[0] == 2);
  CHECK(designs.at("y").means[0] == 7.0);
  const ScenarioMeans s = scenario_means(designs);
  CHECK(s.at("B2").n_designs == 2);
  CHECK(s.at("B2").means[0] == 5.75);

  const std::vector<std::string> need = {"B2", "C1"};
  CHECK_THROWS_AS(scenario_means(designs, need), Error);

  RatingDataset missing = d;
  missing.records.push_back(rating("r1", "z", "B2", MetricId::Play, 2));
  try {
    design_means(missing);
    FAIL("expected missing data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingData);
  }

  RatingDataset split = d;
  split.records.push_back(rating("r3", "x", "C1", MetricId::Play, 2));
  CHECK_THROWS_AS(design_means(split), Error);
}

TEST_CASE("top metrics with ties") {
  const testing::ReferenceMeans t = reference();
  const TopMetrics a3 = top_metrics(t.at("A3"));
  CHECK(a3.argmax_set == std::vector<MetricId>{MetricId::Sociability});
  CHECK(t.at("A3")[index_of(MetricId::Sociability)] == doctest::Approx(5.56));

  const TopMetrics a4 = top_metrics(t.at("A4"));
  CHECK(a4.argmax_set == std::vector<MetricId>{MetricId::Nature, MetricId::Sociability});
  CHECK(t.at("A4")[index_of(MetricId::Nature)] == doctest::Approx(5.02));

  MetricMeans flat;
  flat.fill(4.0);
  const TopMetrics all = top_metrics(flat);
  CHECK(all.argmax_set.size() == kMetricCount);
  CHECK(all.top3 == std::vector<MetricId>{MetricId::Shade, MetricId::Play, MetricId::Comfort});
}

TEST_CASE("agreement on the reference means") {
  const AgreementReport r = agreement_report(as_scenario_means(reference()), cat());
  CHECK(r.agree_count == 9);
  CHECK(r.total == 12);
  CHECK(r.disagreeing() == std::vector<std::string>{"A2", "C1", "C4"});
  for (const ScenarioAgreement& s : r.scenarios) {
    if (!s.agrees) CHECK(s.designated_in_top3);
  }
  const auto c3 = std::find_if(r.scenarios.begin(), r.scenarios.end(), [](const auto& s) { return s.scenario_id == "C3"; });
  REQUIRE(c3 != r.scenarios.end());
  CHECK_FALSE(c3->note.empty());

  ScenarioMeans unknown;
  unknown["Z1"] = {};
  CHECK_THROWS_AS(agreement_report(unknown, cat()), Error);
}

TEST_CASE("pipeline on synthesized ratings") {
  const testing::ReferenceMeans t = reference();
  const RatingDataset d = testing::synthesize_ratings(t);
  const AnalysisReport r = run_analysis(d, cat());
  CHECK(r.excluded_raters.size() == 36);
  for (const auto& [id, means] : t) {
    for (std::size_t m = 0; m < kMetricCount; ++m) CHECK(std::abs(r.means.at(id).means[m] - means[m]) < 0.005);
    CHECK(r.means.at(id).n_designs == 28);
  }
  CHECK(r.agreement.agree_count == 9);
  CHECK(r.agreement.disagreeing() == std::vector<std::string>{"A2", "C1", "C4"});

  const std::string text = format_analysis_text(r, cat());
  CHECK(text.find("Agreement: 9 of 12 (exceptions: A2, C1, C4)") != std::string::npos);
  CHECK(text.find("Highest mean: 5.82 (C2 play)") != std::string::npos);
  CHECK(text.find("Lowest mean: 4.18 (A2 play)") != std::string::npos);
  CHECK(text.find("Lowest sociability: 5.02") != std::string::npos);
  CHECK(text.find("**5.56**") != std::string::npos);

  const std::string json = analysis_json(r, cat());
  CHECK(json.find("\"agree_count\": 9") != std::string::npos);
}

TEST_CASE("prefilter") {
  const auto one = [](std::string text) {
    const std::vector<ResponseRecord> v = {{"r", "d", "A4", std::move(text), 0}};
    return prefilter_responses(v);
  };
  PrefilterResult p = one("park");
  REQUIRE(p.discarded.size() == 1);
  CHECK(p.discarded[0].reason == DiscardReason::Short);

  p = one("shade comfort safety");
  REQUIRE(p.discarded.size() == 1);
  CHECK(p.discarded[0].reason == DiscardReason::MetricList);

  p = one("Shade, comfort, and lots of nature!");
  REQUIRE(p.discarded.size() == 1);
  CHECK(p.discarded[0].reason == DiscardReason::MetricList);

  p = one("Families would gather here for picnics on weekends");
  CHECK(p.retained.size() == 1);
  CHECK(p.flagged.empty());

  p = one("");
  CHECK(p.discarded[0].reason == DiscardReason::Short);
  p = one("a nice garden");
  CHECK(p.discarded[0].reason == DiscardReason::Short);

  p = one("Place good for people. very. it the garden grow and we go there");
  CHECK(p.retained.size() == 1);
  CHECK(p.flagged.size() == 1);
}

TEST_CASE("stemming and tokenizing") {
  CHECK(stem("growing") == "grow");
  CHECK(stem("planted") == "plant");
  CHECK(stem("trees") == "tree");
  CHECK(stem("grass") == "grass");
  CHECK(stem("sing") == "sing");
  CHECK(stem("red") == "red");
  CHECK(stem("bus") == "bus");
  CHECK(tokenize("Farmer's market, on Sunday!") == std::vector<std::string>{"farmers", "market", "on", "sunday"});
}

TEST_CASE("capture coding") {
  const Lexicon& a4 = cat().find_scenario("A4")->lexicon;
  CHECK(classify_response("we would plant vegetables in the community garden", a4) == Capture::Direct);
  CHECK(classify_response("people grow food here together", a4) == Capture::Indirect);
  CHECK(classify_response("a nice place to sit in the afternoon", a4) == Capture::Uncaptured);
  CHECK(classify_response("A COMMUNITY   Garden!", a4) == Capture::Direct);

  const Lexicon& b1 = cat().find_scenario("B1")->lexicon;
  CHECK(classify_response("I love the Farmer's Market here", b1) == Capture::Direct);
  CHECK(classify_response("people come to buy and sell things", b1) == Capture::Indirect);
}

TEST_CASE("capture counts on a built corpus") {
  std::vector<ResponseRecord> corpus;
  for (int i = 0; i < 20; ++i) corpus.push_back({"r" + std::to_string(i), "d", "A4", "neighbours tend a community garden plot #" + std::to_string(i), 0});
  for (int i = 0; i < 8; ++i) corpus.push_back({"s" + std::to_string(i), "d", "A4", "people could be planting tomatoes here " + std::to_string(i), 0});
  for (int i = 0; i < 19; ++i) corpus.push_back({"t" + std::to_string(i), "d", "A4", "a quiet spot to read on a bench " + std::to_string(i), 0});
  corpus.push_back({"u", "d", "A4", "garden", 0});
  std::mt19937_64 rng(4);
  std::shuffle(corpus.begin(), corpus.end(), rng);

  const PrefilterResult pre = prefilter_responses(corpus);
  const CaptureReport report = code_responses(pre, cat());
  CHECK(report.at("A4") == CaptureCounts{20, 8, 19, 1});
  CHECK(report.at("A4").retained() == static_cast<int>(pre.retained.size()));
}

TEST_CASE("responses ingestion") {
  const auto v = ingest_responses_csv("rater_id,design_id,scenario_id,text\nr1,d1,B1,\"buy, sell\"\n");
  REQUIRE(v.size() == 1);
  CHECK(v[0].text == "buy, sell");
  CHECK_THROWS_AS(ingest_responses_csv("rater_id,design_id,scenario_id,text\nr1,d1,Q1,x\n"), RowError);
}

TEST_CASE("property: means match a brute-force sum") {
  std::mt19937_64 rng(30);
  for (int k = 0; k < 10; ++k) {
    const RatingDataset d = random_dataset(rng, 3, 3);
    const FilterResult f = filter_raters(d);
    const ScenarioMeans s = scenario_means(design_means(f.dataset));
    for (const auto& [id, row] : s) {
      for (MetricId m : kAllMetrics) {
        std::map<std::string, std::pair<long, long>> per_design;
        for (const RatingRecord& r : f.dataset.records) {
          if (r.scenario_id == id && r.metric == m) {
            per_design[r.design_id].first += r.value;
            per_design[r.design_id].second += 1;
          }
        }
        double total = 0.0;
        for (const auto& [_, sc] : per_design) total += static_cast<double>(sc.first) / static_cast<double>(sc.second);
        CHECK(row.means[index_of(m)] == doctest::Approx(total / static_cast<double>(per_design.size())).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: shifting every rating leaves rankings unchanged") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    RatingDataset d = random_dataset(rng, 3, 3, 1, 6);
    const AnalysisReport before = run_analysis(d, cat());
    for (RatingRecord& r : d.records) {
      if (!r.is_attention_check) ++r.value;
    }
    const AnalysisReport after = run_analysis(d, cat());
    CHECK(after.agreement.agree_count == before.agreement.agree_count);
    for (std::size_t i = 0; i < before.agreement.scenarios.size(); ++i) {
      CHECK(after.agreement.scenarios[i].argmax_set == before.agreement.scenarios[i].argmax_set);
      CHECK(after.agreement.scenarios[i].top3 == before.agreement.scenarios[i].top3);
    }
    for (const auto& [id, row] : before.means) {
      for (std::size_t m = 0; m < kMetricCount; ++m) CHECK(after.means.at(id).means[m] == doctest::Approx(row.means[m] + 1.0));
    }
  }

  const ScenarioMeans base = as_scenario_means(reference());
  for (double c : {-2.5, 0.75, 10.0}) {
    ScenarioMeans shifted = base;
    for (auto& [_, row] : shifted) {
      for (double& v : row.means) v += c;
    }
    const AgreementReport a = agreement_report(base, cat());
    const AgreementReport b = agreement_report(shifted, cat());
    CHECK(a.agree_count == b.agree_count);
    for (std::size_t i = 0; i < a.scenarios.size(); ++i) {
      CHECK(a.scenarios[i].argmax_set == b.scenarios[i].argmax_set);
      CHECK(a.scenarios[i].top3 == b.scenarios[i].top3);
    }
  }
}

TEST_CASE("property: row order does not matter") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 10; ++k) {
    RatingDataset d = random_dataset(rng, 2, 4);
    const std::string ref = analysis_json(run_analysis(d, cat()), cat());
    std::shuffle(d.records.begin(), d.records.end(), rng);
    CHECK(analysis_json(run_analysis(d, cat()), cat()) == ref);
  }
}

TEST_CASE("property: capture report partitions retained responses") {
  std::mt19937_64 rng(33);
  const std::vector<std::string> words = {"garden", "community", "growing", "people", "shade", "buy",
                                          "kids", "music", "the", "a", "quiet", "play", "family"};
  std::uniform_int_distribution<std::size_t> w(0, words.size() - 1), len(0, 9), sc(0, 11);
  static const char* ids[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4"};
  std::vector<ResponseRecord> rs;
  for (int i = 0; i < 400; ++i) {
    std::string text;
    for (std::size_t n = len(rng); n > 0; --n) text += words[w(rng)] + " ";
    rs.push_back({"r", "d", ids[sc(rng)], text, 0});
  }
  const PrefilterResult pre = prefilter_responses(rs);
  CHECK(pre.retained.size() + pre.discarded.size() == rs.size());
  const CaptureReport report = code_responses(pre, cat());
  int retained = 0, discarded = 0;
  for (const auto& [_, c] : report) {
    retained += c.retained();
    discarded += c.discarded;
  }
  CHECK(retained == static_cast<int>(pre.retained.size()));
  CHECK(discarded == static_cast<int>(pre.discarded.size()));
}

TEST_CASE("excluded raters' responses are dropped") {
  const testing::ReferenceMeans t = reference();
  const RatingDataset d = testing::synthesize_ratings(t);
  const AnalysisReport plain = run_analysis(d, cat());
  REQUIRE_FALSE(plain.excluded_raters.empty());
  const std::vector<ResponseRecord> rs = {
      {plain.excluded_raters.front(), "d", "A4", "we built a community garden together", 0},
      {"A4-r0", "d", "A4", "we built a community garden together", 0}};
  const AnalysisReport r = run_analysis(d, cat(), &rs);
  REQUIRE(r.capture.has_value());
  CHECK(r.capture->at("A4").direct == 1);
}

}
