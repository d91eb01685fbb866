#include <doctest.h>

#include <random>

#include "dasr/diarmetrics.hpp"
#include "dasr/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_sessions.hpp"

using namespace dasr;
using fixtures::seg;

namespace {

SegLst transform(const SegLst& s, double scale, double shift, const std::string& prefix = "") {
  std::vector<Segment> out(s.begin(), s.end());
  for (auto& x : out) {
    x.start_time = x.start_time * scale + shift;
    x.end_time = x.end_time * scale + shift;
    x.speaker = prefix + x.speaker;
  }
  return SegLst(std::move(out));
}

}  // namespace

TEST_CASE("identical hypothesis") {
  const SegLst ref({seg("S", "A", 0, 10, "x"), seg("S", "B", 5, 15, "y"), seg("S", "A", 20, 30, "z")});
  const auto r = der(ref, ref);
  CHECK(r.der() == 0);
  CHECK(r.missed.count() == 0);
  CHECK(r.false_alarm.count() == 0);
  CHECK(r.confusion.count() == 0);
  CHECK(r.scored_speech.count() > 0);
}

TEST_CASE("empty hypothesis") {
  const SegLst ref({seg("S", "A", 0, 10, "x"), seg("S", "B", 5, 15, "y")});
  const auto r = der(ref, SegLst{});
  CHECK(r.missed == r.scored_speech);
  CHECK(r.der() == 1.0);
  CHECK(r.false_alarm.count() == 0);
  CHECK(r.confusion.count() == 0);
}

TEST_CASE("one mislabeled 10 s segment in 100 s of speech") {
  // A speaks [0,50) in five 10 s turns, B speaks [50,100) the same way; the
  // hypothesis labels B's last turn as A.
  std::vector<Segment> ref, hyp;
  for (int k = 0; k < 10; ++k) {
    const std::string spk = k < 5 ? "A" : "B";
    ref.push_back(seg("S", spk, 10.0 * k, 10.0 * k + 10, "w"));
    hyp.push_back(seg("S", k == 9 ? "h1" : (k < 5 ? "h1" : "h2"), 10.0 * k, 10.0 * k + 10, "w"));
  }
  const auto r = der(SegLst(ref), SegLst(hyp), {0.0, true});
  CHECK(to_seconds(r.scored_speech) == 100.0);
  CHECK(r.confusion_rate() == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(r.der() == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(r.missed.count() == 0);
  CHECK(r.false_alarm.count() == 0);

  const auto f = oracle::frame_der(SegLst(ref), SegLst(hyp), 0.0, true);
  CHECK(f.confusion / f.scored == doctest::Approx(0.10).epsilon(1e-9));
}

TEST_CASE("collar and overlap options") {
  const SegLst ref({seg("S", "A", 0, 10, "x"), seg("S", "B", 8, 12, "y")});
  const SegLst hyp({seg("S", "h", 0, 10, "x")});
  const auto full = der(ref, hyp, {0.0, true});
  CHECK(to_seconds(full.scored_speech) == 14.0);
  CHECK(to_seconds(full.missed) == 4.0);

  // overlap [8,10) dropped
  const auto no_ovl = der(ref, hyp, {0.0, false});
  CHECK(to_seconds(no_ovl.scored_speech) == 10.0);
  CHECK(to_seconds(no_ovl.missed) == 2.0);

  // collar 0.5 removes [-0.5,0.5), [7.5,8.5), [9.5,10.5), [11.5,12.5)
  const auto collared = der(ref, hyp, {0.5, true});
  // A scored on [0.5,7.5) and [8.5,9.5), B on [8.5,9.5) and [10.5,11.5)
  CHECK(to_seconds(collared.scored_speech) == 10.0);
  CHECK(to_seconds(collared.missed) == 2.0);
  CHECK_THROWS_AS(der(ref, hyp, {-1.0, true}), ContractError);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(der(SegLst{}, SegLst{}), UndefinedRateError);
  // all speech inside the collar
  CHECK_THROWS_AS(der(SegLst({seg("S", "A", 0, 0.2, "x")}), SegLst{}, {0.25, true}), UndefinedRateError);
  const SegLst two({seg("S", "A", 0, 1, "x"), seg("T", "A", 0, 1, "x")});
  CHECK_THROWS_AS(der(two, two), ContractError);
}

TEST_CASE("optimal_speaker_mapping") {
  const SegLst ref({seg("S", "A", 0, 10, "x"), seg("S", "B", 10, 20, "y"), seg("S", "C", 20, 25, "z")});
  SUBCASE("rename is recovered") {
    const SegLst hyp({seg("S", "q", 0, 10, "x"), seg("S", "p", 10, 20, "y"), seg("S", "r", 20, 25, "z")});
    CHECK(optimal_speaker_mapping(ref, hyp) == SpeakerMapping{{"A", "q"}, {"B", "p"}, {"C", "r"}});
  }
  SUBCASE("silent hypothesis speaker stays unmapped") {
    const SegLst hyp({seg("S", "q", 0, 10, "x"), seg("S", "p", 10, 20, "y"), seg("S", "z", 40, 41, "n")});
    CHECK(optimal_speaker_mapping(ref, hyp) == SpeakerMapping{{"A", "q"}, {"B", "p"}});
  }
  SUBCASE("3x2 overlap matrix") {
    // overlaps: A-p 6, A-q 4, B-p 5, B-q 0, C-p 0, C-q 5 -> best A-p + C-q = 11 (B-p + A-q = 9)
    const SegLst hyp({seg("S", "p", 0, 6, "x"), seg("S", "q", 6, 10, "x"), seg("S", "p", 10, 15, "x"),
                      seg("S", "q", 20, 25, "x")});
    CHECK(optimal_speaker_mapping(ref, hyp) == SpeakerMapping{{"A", "p"}, {"C", "q"}});
  }
}

TEST_CASE("speaker_count_errors") {
  auto session = [](const std::string& id, int speakers) {
    std::vector<Segment> s;
    for (int k = 0; k < speakers; ++k) s.push_back(seg(id, "s" + std::to_string(k), k, k + 1, "w"));
    return s;
  };
  auto join = [](std::vector<Segment> a, const std::vector<Segment>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return SegLst(std::move(a));
  };
  SUBCASE("equal counts") {
    const auto r = speaker_count_errors(join(session("S", 3), session("T", 2)), join(session("S", 3), session("T", 2)));
    CHECK(r.missed_pct() == 0.0);
    CHECK(r.false_alarm_pct() == 0.0);
  }
  SUBCASE("R=4, H=2") {
    const auto r = speaker_count_errors(SegLst(session("S", 4)), SegLst(session("S", 2)));
    CHECK(r.ref_speakers == 4);
    CHECK(r.missed_pct() == 50.0);
    CHECK(r.false_alarm_pct() == 0.0);
  }
  SUBCASE("R<H") {
    const auto r = speaker_count_errors(SegLst(session("S", 2)), SegLst(session("S", 5)));
    CHECK(r.missed_pct() == 0.0);
    CHECK(r.false_alarm_pct() == 150.0);
  }
  SUBCASE("two sessions (2,3) and (2,2)") {
    const auto r = speaker_count_errors(join(session("S", 2), session("T", 2)), join(session("S", 3), session("T", 2)));
    CHECK(r.missed_pct() == 0.0);
    CHECK(r.false_alarm_pct() == 25.0);
  }
  SUBCASE("same label in two sessions counts twice") {
    const auto r = speaker_count_errors(join(session("S", 1), session("T", 1)), SegLst{});
    CHECK(r.ref_speakers == 2);
    CHECK(r.missed_pct() == 100.0);
  }
  SUBCASE("unknown hypothesis session") {
    try {
      speaker_count_errors(SegLst(session("S", 1)), SegLst(session("X", 1)));
      FAIL("no exception");
    } catch (const ScoringError& e) {
      CHECK(std::string(e.what()).find("X") != std::string::npos);
    }
  }
}

TEST_CASE("random sessions against the frame oracle and invariances") {
  gen::Rng rng(31);
  gen::Options o;
  for (int trial = 0; trial < 80; ++trial) {
    const auto [ref, hyp] = gen::session_pair(rng, o);
    for (const DerOptions opts : {DerOptions{0.0, true}, DerOptions{0.25, true}, DerOptions{0.5, false}}) {
      DerResult r;
      try {
        r = der(ref, hyp, opts);
      } catch (const UndefinedRateError&) {
        continue;
      }
      // components add up exactly in integer time
      CHECK((r.missed + r.false_alarm + r.confusion).count() ==
            static_cast<std::int64_t>(std::llround(r.der() * static_cast<double>(r.scored_speech.count()))));
      CHECK(r.missed_rate() + r.false_alarm_rate() + r.confusion_rate() ==
            doctest::Approx(r.der()).epsilon(1e-12));

      const auto f = oracle::frame_der(ref, hyp, opts.collar, opts.score_overlap);
      // segment boundaries plus the two edges of every collar zone
      const std::size_t boundaries = 2 * (ref.size() + hyp.size()) + (opts.collar > 0 ? 4 * ref.size() : 0);
      const double tol = static_cast<double>(boundaries) * 0.01;
      CHECK(std::abs(f.scored - to_seconds(r.scored_speech)) <= tol);
      CHECK(std::abs(f.missed - to_seconds(r.missed)) <= tol);
      CHECK(std::abs(f.false_alarm - to_seconds(r.false_alarm)) <= tol);
      CHECK(std::abs(f.confusion - to_seconds(r.confusion)) <= tol);

      CHECK(der(transform(ref, 1, 7, "x"), transform(hyp, 1, 7, "y"), opts) == r);
      const auto scaled = der(transform(ref, 3, 0), transform(hyp, 3, 0), {opts.collar * 3, opts.score_overlap});
      CHECK(scaled.der() == doctest::Approx(r.der()).epsilon(1e-12));
      CHECK(scaled.missed_rate() == doctest::Approx(r.missed_rate()).epsilon(1e-12));
      CHECK(scaled.confusion_rate() == doctest::Approx(r.confusion_rate()).epsilon(1e-12));
    }
    const auto spk = speaker_count_errors(ref, ref);
    CHECK(spk.missed_speakers == 0);
    CHECK(spk.false_alarm_speakers == 0);
  }
}
