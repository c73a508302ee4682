#include "lotforge/catalog.hpp"
#include "lotforge/error.hpp"
#include "lotforge/scene_codec.hpp"

#include "random_scene.hpp"

#include <doctest/doctest.h>

#include <algorithm>
#include <random>

using namespace lotforge;

TEST_SUITE("scene_codec") {

TEST_CASE("empty scene canonical document") {
  const Scene s = create_scene(LotSpec{});
  const std::string doc = encode_scene(s);
  CHECK(doc ==
        "{\n"
        "  \"format_version\": \"1\",\n"
        "  \"lot\": {\"width\": 40, \"depth\": 30, \"location_tag\": \"Los Angeles, CA\"},\n"
        "  \"scenario_id\": null,\n"
        "  \"instances\": []\n"
        "}\n");
  CHECK(decode_scene(doc) == s);
}

TEST_CASE("instances are written sorted with fixed keys") {
  Scene s = create_scene(LotSpec{}, "A4");
  s.instances.push_back({"e0003", "goat", make_pose({12.5, 3.25}, 45, 1)});
  s.instances.push_back({"e0001", "tree.oak", make_pose({10, 10}, 0, 1.5)});
  s.instances.push_back({"e0002", "bench.basic", make_pose({1.0 / 3.0, 7}, 90, 0.5)});
  const std::string doc = encode_scene(s);
  CHECK(doc ==
        "{\n"
        "  \"format_version\": \"1\",\n"
        "  \"lot\": {\"width\": 40, \"depth\": 30, \"location_tag\": \"Los Angeles, CA\"},\n"
        "  \"scenario_id\": \"A4\",\n"
        "  \"instances\": [\n"
        "    {\"id\": \"e0001\", \"entry\": \"tree.oak\", \"x\": 10, \"y\": 10, \"rot\": 0, \"scale\": 1.5},\n"
        "    {\"id\": \"e0002\", \"entry\": \"bench.basic\", \"x\": 0.333333, \"y\": 7, \"rot\": 90, \"scale\": 0.5},\n"
        "    {\"id\": \"e0003\", \"entry\": \"goat\", \"x\": 12.5, \"y\": 3.25, \"rot\": 45, \"scale\": 1}\n"
        "  ]\n"
        "}\n");

  Scene shuffled = s;
  std::rotate(shuffled.instances.begin(), shuffled.instances.begin() + 1, shuffled.instances.end());
  CHECK(encode_scene(shuffled) == doc);
  CHECK(decode_scene(doc) == s);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0) == "0");
  CHECK(format_number(-0.0000001) == "0");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1.0000004) == "1");
  CHECK(format_number(123.456789123) == "123.456789");
}

TEST_CASE("decode errors") {
  const std::string doc = encode_scene(create_scene(LotSpec{}));
  SUBCASE("truncated") {
    try {
      decode_scene(doc.substr(0, doc.size() / 2));
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
    }
  }
  SUBCASE("not json") { CHECK_THROWS_AS(decode_scene("hello"), ParseError); }
  SUBCASE("unknown version") {
    std::string v2 = doc;
    v2.replace(v2.find("\"1\""), 3, "\"2\"");
    try {
      decode_scene(v2);
      FAIL("expected version error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Version);
    }
  }
  SUBCASE("missing instances") {
    CHECK_THROWS_AS(decode_scene(R"({"format_version": "1", "lot": {"width": 40, "depth": 30}})"), ParseError);
  }
  SUBCASE("wrong type") {
    CHECK_THROWS_AS(decode_scene(R"({"format_version": "1", "lot": {"width": "wide", "depth": 30}, "instances": []})"),
                    ParseError);
  }
}

TEST_CASE("non-canonical input re-encodes canonically") {
  const std::string loose =
      R"({"instances":[{"scale":1.0,"rot":360.0000001,"y":2.0000004,"x":1,"entry":"goat","id":"b"},)"
      R"({"id":"a","entry":"goat","x":3.10,"y":4,"rot":10,"scale":2}],)"
      R"("scenario_id":"B2","lot":{"depth":30.0,"width":30.0},"format_version":"1"})";
  const Scene s = decode_scene(loose);
  const std::string canon = encode_scene(s);
  CHECK(canon.find("\"id\": \"a\"") < canon.find("\"id\": \"b\""));
  CHECK(canon.find("\"y\": 2,") != std::string::npos);
  CHECK(encode_scene(decode_scene(canon)) == canon);
}

TEST_CASE("round trip on random scenes") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 300; ++k) {
    Scene s = testing::random_scene(rng, builtin_catalog());
    if (k % 3 == 0) s.scenario_id = "C2";
    const std::string doc = encode_scene(s);
    const Scene back = decode_scene(doc);
    CHECK(back == s);
    CHECK(encode_scene(back) == doc);
  }
}

}
