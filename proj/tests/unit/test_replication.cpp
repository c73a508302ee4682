#include "lotforge/catalog.hpp"
#include "lotforge/error.hpp"
#include "lotforge/replication.hpp"
#include "lotforge/scene_codec.hpp"

#include "random_scene.hpp"

#include <doctest/doctest.h>

#include <algorithm>
#include <random>

using namespace lotforge;

namespace {

Scene target() {
  Scene s = create_scene(LotSpec{});
  s.instances.push_back({"t1", "bench.basic", make_pose({10, 10})});
  s.instances.push_back({"t2", "bench.basic", make_pose({20, 10})});
  s.instances.push_back({"t3", "tree.oak", make_pose({15, 20}, 30)});
  return s;
}

Scene renamed(const Scene& s) {
  Scene out = s;
  for (ElementInstance& i : out.instances) i.instance_id = "c-" + i.instance_id;
  return out;
}

}  // namespace

TEST_SUITE("replication") {

TEST_CASE("a scene matches itself") {
  const MatchReport r = match_replication(target(), target());
  CHECK(r.passed);
  CHECK(r.missing.empty());
  CHECK(r.extras.empty());
  REQUIRE(r.pairs.size() == 3);
  CHECK(r.pairs[0].target_id == "t1");
  CHECK(r.pairs[0].candidate_id == "t1");
}

TEST_CASE("small displacement passes, large fails") {
  Scene c = renamed(target());
  c.instances[0].pose.position.x += 0.5;
  CHECK(match_replication(c, target()).passed);

  c.instances[0].pose.position.x += 0.6;
  const MatchReport r = match_replication(c, target());
  CHECK_FALSE(r.passed);
  CHECK(r.missing.empty());
  CHECK(r.extras.empty());
  CHECK_FALSE(r.pairs[0].within_tolerance);
  CHECK(r.pairs[0].position == doctest::Approx(1.1));
}

TEST_CASE("rotation and scale tolerances") {
  Scene c = target();
  c.instances[2].pose = make_pose({15, 20}, 15, 1.2);
  const MatchReport ok = match_replication(c, target());
  CHECK(ok.passed);
  CHECK(ok.pairs[2].rotation == doctest::Approx(15.0));
  CHECK(ok.pairs[2].scale == doctest::Approx(0.2));

  c.instances[2].pose = make_pose({15, 20}, 51, 1.0);
  CHECK_FALSE(match_replication(c, target()).passed);
  c.instances[2].pose = make_pose({15, 20}, 30, 1.3);
  CHECK_FALSE(match_replication(c, target()).passed);

  Scene t = target();
  t.instances[2].pose = make_pose({15, 20}, 350, 1.0);
  c.instances[2].pose = make_pose({15, 20}, 5, 1.0);
  const MatchReport wrap = match_replication(c, t);
  CHECK(wrap.passed);
  CHECK(wrap.pairs[2].rotation == doctest::Approx(15.0));
}

TEST_CASE("missing and extra elements fail") {
  Scene c = target();
  c.instances.erase(c.instances.begin() + 1);
  MatchReport r = match_replication(c, target());
  CHECK_FALSE(r.passed);
  CHECK(r.missing == std::vector<std::string>{"t2"});

  c = target();
  c.instances.push_back({"goat1", "goat", make_pose({5, 5})});
  r = match_replication(c, target());
  CHECK_FALSE(r.passed);
  CHECK(r.extras == std::vector<std::string>{"goat1"});

  r = match_replication(create_scene(LotSpec{}), target());
  CHECK_FALSE(r.passed);
  CHECK(r.missing == std::vector<std::string>{"t1", "t2", "t3"});
}

TEST_CASE("matching only pairs identical entries") {
  Scene c = target();
  c.instances[2].entry_id = "tree.fruit";
  const MatchReport r = match_replication(c, target());
  CHECK_FALSE(r.passed);
  CHECK(r.missing == std::vector<std::string>{"t3"});
  CHECK(r.extras == std::vector<std::string>{"t3"});
}

TEST_CASE("greedy nearest candidate per target") {
  Scene c = create_scene(LotSpec{});
  c.instances.push_back({"a", "bench.basic", make_pose({19.8, 10})});
  c.instances.push_back({"b", "bench.basic", make_pose({10.3, 10})});
  c.instances.push_back({"c", "tree.oak", make_pose({15, 20}, 30)});
  const MatchReport r = match_replication(c, target());
  CHECK(r.passed);
  CHECK(r.pairs[0].candidate_id == "b");
  CHECK(r.pairs[1].candidate_id == "a");
}

TEST_CASE("tolerances must be positive") {
  CHECK_THROWS_AS(match_replication(target(), target(), {0.0, 20, 0.25}), Error);
  CHECK_THROWS_AS(check_tolerances({1.0, -1, 0.25}), Error);
}

TEST_CASE("reflexive and permutation-invariant on random scenes") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const Scene t = testing::random_scene(rng, builtin_catalog(), {.max_elements = 9});
    CHECK(match_replication(t, t).passed);
    Scene c = t;
    std::shuffle(c.instances.begin(), c.instances.end(), rng);
    const MatchReport a = match_replication(c, t);
    const MatchReport b = match_replication(t, t);
    CHECK(a.passed);
    CHECK(a.pairs.size() == b.pairs.size());
  }
}

TEST_CASE("shipped practice scene") {
  const Scene& p = practice_scene();
  CHECK(p.instances.size() < 10);
  CHECK(p.instances.size() >= 3);
  CHECK(validate_scene(p, builtin_catalog()).empty());
  CHECK(encode_scene(p) == builtin_practice_document());
  CHECK(match_replication(p, p).passed);
}

}
