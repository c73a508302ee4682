#include "lotforge/catalog.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/plan_render.hpp"
#include "lotforge/scene_codec.hpp"
#include "lotforge/survey.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace lotforge;

namespace {

Scene make_scene(int n, std::uint64_t seed) {
  const Catalog& cat = builtin_catalog();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0, 40), uy(0, 30), rot(0, 360), sc(0.5, 2.0);
  std::uniform_int_distribution<std::size_t> pick(0, cat.entries().size() - 1);
  Scene s = create_scene(LotSpec{});
  for (int i = 0; i < n; ++i) {
    s.instances.push_back({"e" + std::to_string(i), cat.entries()[pick(rng)].id,
                           make_pose({ux(rng), uy(rng)}, rot(rng), sc(rng))});
  }
  return s;
}

Scene make_grove(int trees) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0, 40), uy(0, 30);
  Scene s = create_scene(LotSpec{});
  for (int i = 0; i < trees; ++i) s.instances.push_back({"t" + std::to_string(i), "tree.oak", make_pose({ux(rng), uy(rng)})});
  return s;
}

RatingDataset make_ratings(int designs, int raters) {
  static const char* ids[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4"};
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> v(1, 7);
  RatingDataset d;
  for (const char* sc : ids) {
    for (int r = 0; r < raters; ++r) {
      for (int g = 0; g < designs; ++g) {
        for (MetricId m : kAllMetrics) {
          RatingRecord rec;
          rec.rater_id = std::string(sc) + "-r" + std::to_string(r);
          rec.design_id = std::string(sc) + "-d" + std::to_string(g);
          rec.scenario_id = sc;
          rec.metric = m;
          rec.value = v(rng);
          d.records.push_back(std::move(rec));
        }
      }
    }
  }
  return d;
}

void BM_ScoreScene(benchmark::State& state) {
  const Scene s = make_scene(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(score_scene(s, builtin_catalog()));
}
BENCHMARK(BM_ScoreScene)->Arg(5)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ShadedFraction(benchmark::State& state) {
  const Scene s = make_grove(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shaded_fraction(s, builtin_catalog()));
}
BENCHMARK(BM_ShadedFraction)->Arg(1)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_EncodeScene(benchmark::State& state) {
  const Scene s = make_scene(30, 2);
  for (auto _ : state) benchmark::DoNotOptimize(encode_scene(s));
}
BENCHMARK(BM_EncodeScene);

void BM_DecodeScene(benchmark::State& state) {
  const std::string doc = encode_scene(make_scene(30, 2));
  for (auto _ : state) benchmark::DoNotOptimize(decode_scene(doc));
}
BENCHMARK(BM_DecodeScene);

void BM_RenderPlan(benchmark::State& state) {
  const Scene s = make_scene(30, 4);
  const RenderOptions opts{true, std::nullopt, true};
  for (auto _ : state) benchmark::DoNotOptimize(render_plan(s, builtin_catalog(), opts));
}
BENCHMARK(BM_RenderPlan);

void BM_AnalysisPipeline(benchmark::State& state) {
  const std::string csv = ratings_to_csv(make_ratings(28, 5));
  for (auto _ : state) benchmark::DoNotOptimize(run_analysis(ingest_ratings_csv(csv), builtin_catalog()));
}
BENCHMARK(BM_AnalysisPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
