#include <doctest.h>

#include <fstream>
#include <random>

#include <json.hpp>

#include "dasr/error.hpp"
#include "dasr/seglst.hpp"
#include "fixtures.hpp"

using namespace dasr;
using fixtures::seg;

TEST_CASE("parse: single element with string times") {
  const auto s = parse_seglst(
      R"([{"session_id":"S1","speaker":"A","start_time":"0.0","end_time":"2.0","words":"hello"}])");
  REQUIRE(s.size() == 1);
  CHECK(s[0].duration() == doctest::Approx(2.0));
  CHECK(s[0].session_id == "S1");
  CHECK(s[0].words == "hello");
}

TEST_CASE("parse: empty array") { CHECK(parse_seglst("[]").empty()); }

TEST_CASE("parse: three objects in two sessions") {
  const auto s = parse_seglst(R"([
    {"session_id":"S1","speaker":"A","start_time":0,"end_time":1,"words":"a"},
    {"words":"b","end_time":3,"start_time":2,"speaker":"B","session_id":"S2"},
    {"session_id":"S1","speaker":"B","start_time":1.5,"end_time":2.5,"words":"c"}])");
  CHECK(s.size() == 3);
  CHECK(s.session_ids() == std::set<std::string>{"S1", "S2"});
}

TEST_CASE("parse: malformed JSON reports the byte offset") {
  const std::string raw = R"([{"session_id":"S1",}])";
  try {
    parse_seglst(raw);
    FAIL("no exception");
  } catch (const ParseError& e) {
    // the offending '}' follows the trailing comma
    CHECK(e.byte_offset() == raw.find(",}") + 2);
  }
}

TEST_CASE("parse: missing key names key and index") {
  try {
    parse_seglst(R"([{"session_id":"S","speaker":"A","start_time":0,"end_time":1,"words":"x"},
                     {"session_id":"S","speaker":"A","start_time":0,"words":"x"}])");
    FAIL("no exception");
  } catch (const SchemaError& e) {
    CHECK(e.key() == "end_time");
    CHECK(e.index() == 1);
  }
}

TEST_CASE("parse: schema and value errors") {
  CHECK_THROWS_AS(parse_seglst(R"({"a":1})"), SchemaError);
  CHECK_THROWS_AS(parse_seglst(R"([1])"), SchemaError);
  CHECK_THROWS_AS(parse_seglst(R"([{"session_id":1,"speaker":"A","start_time":0,"end_time":1,"words":"x"}])"),
                  SchemaError);
  CHECK_THROWS_AS(parse_seglst(R"([{"session_id":"S","speaker":"A","start_time":"abc","end_time":1,"words":"x"}])"),
                  ValueError);
  CHECK_THROWS_AS(parse_seglst(R"([{"session_id":"S","speaker":"A","start_time":"1.0s","end_time":2,"words":"x"}])"),
                  ValueError);
  CHECK_THROWS_AS(parse_seglst(R"([{"session_id":"S","speaker":"A","start_time":true,"end_time":2,"words":"x"}])"),
                  ValueError);
  CHECK_THROWS_AS(parse_seglst(R"([{"session_id":"S","speaker":"A","start_time":"nan","end_time":2,"words":"x"}])"),
                  ValueError);
}

TEST_CASE("parse: extra keys survive a round trip") {
  const auto s = parse_seglst(
      R"([{"session_id":"S","speaker":"A","start_time":0,"end_time":1,"words":"x","ref":"U02","conf":{"a":[1,2]}}])");
  CHECK(s[0].extra.at("ref") == "U02");
  CHECK(parse_seglst(write_seglst(s)) == s);
}

TEST_CASE("write: empty and single segment") {
  CHECK(nlohmann::json::parse(write_seglst(SegLst{})) == nlohmann::json::array());
  const auto out = nlohmann::json::parse(write_seglst(SegLst({seg("S", "A", 0.5, 1.25, "hi there")})));
  REQUIRE(out.size() == 1);
  for (const char* key : {"session_id", "speaker", "start_time", "end_time", "words"}) {
    CHECK(out[0].contains(key));
  }
  CHECK(out[0]["start_time"].get<double>() == 0.5);
  CHECK(out[0]["end_time"].get<double>() == 1.25);
}

TEST_CASE("write: millisecond times are written with at most three decimals") {
  const std::string out = write_seglst(SegLst({seg("S", "A", 12.345, 13.1, "x")}));
  CHECK(out.find("12.345") != std::string::npos);
  CHECK(out.find("13.1") != std::string::npos);
  CHECK(out.find("12.3450") == std::string::npos);
}

TEST_CASE("round trip of 100 random segments") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.0, 5000.0), d(0.001, 30.0);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Segment> segs;
    for (int i = 0; i < 100; ++i) {
      const double start = t(rng);
      Segment s = seg("S" + std::to_string(pick(rng)), "spk" + std::to_string(pick(rng)), start,
                      start + d(rng), "w" + std::to_string(pick(rng)) + " été \"q\"");
      if (pick(rng) == 0) s.extra["note"] = i;
      segs.push_back(std::move(s));
    }
    const SegLst original(std::move(segs));
    const SegLst back = parse_seglst(write_seglst(original));
    REQUIRE(back.size() == original.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].session_id == original[i].session_id);
      CHECK(back[i].speaker == original[i].speaker);
      CHECK(back[i].words == original[i].words);
      CHECK(back[i].extra == original[i].extra);
      CHECK(std::abs(back[i].start_time - original[i].start_time) <= 1e-6);
      CHECK(std::abs(back[i].end_time - original[i].end_time) <= 1e-6);
    }
    // write . parse is the identity on written documents
    CHECK(write_seglst(back) == write_seglst(parse_seglst(write_seglst(back))));
  }
}

TEST_CASE("validate") {
  SUBCASE("valid input") {
    CHECK(validate(SegLst({seg("S", "A", 0, 1, "a"), seg("S", "B", 0.5, 2, "b")})).empty());
  }
  SUBCASE("zero duration") {
    const auto v = validate(SegLst({seg("S", "A", 0, 1, "a"), seg("S", "A", 3, 3, "b")}));
    REQUIRE(v.size() == 1);
    CHECK(v[0].index == 1);
    CHECK(v[0].kind == "non-positive duration");
    CHECK(v[0].severity == Severity::error);
  }
  SUBCASE("empty transcript") {
    const auto v = validate(SegLst({seg("S", "A", 0, 1, "")}));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "empty transcript");
  }
  SUBCASE("negative start, empty labels") {
    const auto v = validate(SegLst({seg("", "", -1, 1, "x")}));
    std::set<std::string> kinds;
    for (const auto& x : v) kinds.insert(x.kind);
    CHECK(kinds == std::set<std::string>{"negative start", "empty session", "empty speaker"});
    CHECK(has_errors(v));
  }
  SUBCASE("duplicates are a warning and are kept") {
    const SegLst s({seg("S", "A", 0, 1, "a"), seg("S", "A", 0, 1, "a")});
    const auto v = validate(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].severity == Severity::warning);
    CHECK_FALSE(has_errors(v));
    CHECK(s.size() == 2);
  }
}

TEST_CASE("split_by_session") {
  CHECK(split_by_session(SegLst{}).empty());
  CHECK(split_by_session(SegLst({seg("S", "A", 0, 1, "a")})).size() == 1);
  const SegLst s({seg("S1", "A", 0, 1, "a"), seg("S2", "A", 0, 1, "b"), seg("S1", "B", 1, 2, "c"),
                  seg("S2", "B", 2, 3, "d"), seg("S1", "A", 4, 5, "e")});
  const auto parts = split_by_session(s);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at("S1").size() + parts.at("S2").size() == s.size());
  for (const auto& [id, part] : parts) CHECK(part.session_ids() == std::set<std::string>{id});
}

TEST_CASE("scan_layout") {
  fixtures::TempDir tmp;
  const auto dev = tmp.path() / "chime6" / "transcriptions" / "dev";
  write_file(dev / "S02.json", "[]");
  write_file(dev / "S01.json", "[]");
  write_file(dev / "notes.txt", "ignored");

  SUBCASE("two session files") {
    const auto m = scan_layout(tmp.path(), "chime6", "dev");
    REQUIRE(m.session_files.size() == 2);
    CHECK(m.session_files.begin()->first == "S01");
    CHECK(m.session_files.at("S02") == dev / "S02.json");
  }
  SUBCASE("missing split names the path") {
    try {
      scan_layout(tmp.path(), "chime6", "eval");
      FAIL("no exception");
    } catch (const LayoutError& e) {
      CHECK(e.path() == tmp.path() / "chime6" / "transcriptions" / "eval");
      CHECK(std::string(e.what()).find("eval") != std::string::npos);
    }
    CHECK_THROWS_AS(scan_layout(tmp.path(), "dipco", "dev"), LayoutError);
  }
  SUBCASE("duplicate session file") {
    write_file(dev / "s01.JSON", "[]");
    CHECK_THROWS_AS(scan_layout(tmp.path(), "chime6", "dev"), LayoutError);
  }
  SUBCASE("scoring folder") {
    CHECK_THROWS_AS(scan_layout(tmp.path(), "chime6", "dev", TranscriptionKind::scoring), LayoutError);
    write_file(tmp.path() / "chime6" / "transcriptions_scoring" / "dev" / "S01.json", "[]");
    CHECK(scan_layout(tmp.path(), "chime6", "dev", TranscriptionKind::scoring).session_files.size() == 1);
  }
}

TEST_CASE("scan_layout on the mini-corpus matches the fixture list") {
  const auto root = fixtures::minicorpus() / "ref";
  const auto expected = nlohmann::json::parse(read_file(fixtures::minicorpus() / "fixture_sessions.json"));
  const auto scenarios = list_scenarios(root);
  REQUIRE(scenarios.size() == 4);
  for (const auto& scenario : scenarios) {
    const auto m = scan_layout(root, scenario, "dev");
    std::vector<std::string> sessions;
    for (const auto& [id, path] : m.session_files) {
      sessions.push_back(id);
      CHECK(std::filesystem::exists(path));
    }
    CHECK(sessions == expected.at(scenario).get<std::vector<std::string>>());
  }
}

TEST_CASE("sorted orders by session and start") {
  const SegLst s({seg("S2", "A", 0, 1, "a"), seg("S1", "B", 5, 6, "b"), seg("S1", "A", 1, 2, "c")});
  const auto t = s.sorted();
  CHECK(t[0].words == "c");
  CHECK(t[1].words == "b");
  CHECK(t[2].words == "a");
}
