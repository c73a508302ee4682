#include "lotforge/error.hpp"
#include "lotforge/store.hpp"

#include "files.hpp"

#include <doctest/doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <thread>

using namespace lotforge;

TEST_SUITE("store") {

TEST_CASE("append, get and list") {
  testing::TempDir dir;
  RecordStore store(dir.path() / "data");
  const StoreRecord a = store.append(RecordKind::Scene, R"({"x":1})");
  const StoreRecord b = store.append(RecordKind::Scene, R"({"x":2})");
  const StoreRecord c = store.append(RecordKind::Submission, "{}");
  CHECK(a.id == "scn-000001");
  CHECK(b.id == "scn-000002");
  CHECK(c.id == "sub-000001");
  CHECK(store.append(RecordKind::Assignment, "{}").id == "asg-000001");
  CHECK(std::regex_match(a.created_at, std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\d\.\d{3}Z)")));

  CHECK(store.get("scn-000002")->body == R"({"x":2})");
  CHECK_FALSE(store.get("scn-000009").has_value());
  CHECK(store.count(RecordKind::Scene) == 2);
  const auto scenes = store.list(RecordKind::Scene);
  REQUIRE(scenes.size() == 2);
  CHECK(scenes[0].id == a.id);
  CHECK(std::filesystem::exists(dir.path() / "data" / "scenes.ndjson"));
}

TEST_CASE("records survive a restart") {
  testing::TempDir dir;
  std::string id;
  {
    RecordStore store(dir.path());
    id = store.append(RecordKind::Scene, "{\"body\":\"line\\nbreak\"}").id;
  }
  RecordStore again(dir.path());
  REQUIRE(again.get(id).has_value());
  CHECK(again.get(id)->body == "{\"body\":\"line\\nbreak\"}");
  CHECK(again.append(RecordKind::Scene, "{}").id == "scn-000002");
}

TEST_CASE("a torn final line is dropped and ids are not reused") {
  testing::TempDir dir;
  {
    RecordStore store(dir.path());
    store.append(RecordKind::Scene, "{}");
    store.append(RecordKind::Scene, "{}");
  }
  {
    std::ofstream out(dir.path() / "scenes.ndjson", std::ios::app);
    out << R"({"id":"scn-000003","kind":"scene","crea)";
  }
  RecordStore store(dir.path());
  CHECK(store.count(RecordKind::Scene) == 2);
  CHECK(store.append(RecordKind::Scene, "{}").id == "scn-000003");
  RecordStore reread(dir.path());
  CHECK(reread.count(RecordKind::Scene) == 3);
}

TEST_CASE("corruption in the middle of a log is an integrity error") {
  testing::TempDir dir;
  {
    RecordStore store(dir.path());
    store.append(RecordKind::Scene, "{}");
  }
  const std::string good = testing::read_file(dir.path() / "scenes.ndjson");
  testing::write_file(dir.path() / "scenes.ndjson", "garbage\n" + good);
  try {
    RecordStore store(dir.path());
    FAIL("expected an integrity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Integrity);
  }
}

TEST_CASE("concurrent appends get distinct ids") {
  testing::TempDir dir;
  RecordStore store(dir.path());
  std::vector<std::thread> threads;
  std::vector<std::vector<std::string>> ids(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int k = 0; k < 25; ++k) {
        ids[t].push_back(store.append(RecordKind::Submission, "{}").id);
        (void)store.list(RecordKind::Submission);
      }
    });
  }
  for (auto& th : threads) th.join();
  std::set<std::string> all;
  for (const auto& v : ids) all.insert(v.begin(), v.end());
  CHECK(all.size() == 100);
  CHECK(store.count(RecordKind::Submission) == 100);
  RecordStore reread(dir.path());
  CHECK(reread.count(RecordKind::Submission) == 100);
}

}
