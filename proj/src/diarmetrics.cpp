#include "dasr/diarmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dasr/assignment.hpp"
#include "dasr/error.hpp"
#include "sweep.hpp"

namespace dasr {

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UndefinedRateError("rate undefined: zero denominator");
  return static_cast<double>(num) / static_cast<double>(den);
}

// One elementary interval of the joint ref/hyp timeline.
struct Slice {
  std::int64_t length;
  std::vector<int> ref_active;  // indices into ref speakers
  std::vector<int> hyp_active;  // indices into hyp speakers
};

struct Timeline {
  std::vector<std::string> ref_speakers;
  std::vector<std::string> hyp_speakers;
  std::vector<Slice> scored;  // only slices that count towards the score
};

std::vector<std::string> sorted_speakers(const SegLst& s) {
  const auto set = s.speakers();
  return {set.begin(), set.end()};
}

int index_of(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

Timeline build_timeline(const SegLst& ref, const SegLst& hyp, const DerOptions& opts) {
  if (!(opts.collar >= 0)) throw ContractError("DER collar must be >= 0");
  auto ids = ref.session_ids();
  ids.merge(hyp.session_ids());
  if (ids.size() > 1) throw ContractError("DER expects a single session; split by session first");

  Timeline tl{sorted_speakers(ref), sorted_speakers(hyp), {}};
  const int r = static_cast<int>(tl.ref_speakers.size());
  const int h = static_cast<int>(tl.hyp_speakers.size());
  const int collar_label = r + h;
  const std::int64_t collar = to_duration(opts.collar).count();

  std::vector<detail::LabeledInterval> intervals;
  for (const auto& seg : ref) {
    const auto b = to_duration(seg.start_time).count();
    const auto e = to_duration(seg.end_time).count();
    intervals.push_back({b, e, index_of(tl.ref_speakers, seg.speaker)});
    if (collar > 0) {
      intervals.push_back({b - collar, b + collar, collar_label});
      intervals.push_back({e - collar, e + collar, collar_label});
    }
  }
  for (const auto& seg : hyp) {
    intervals.push_back({to_duration(seg.start_time).count(), to_duration(seg.end_time).count(),
                         r + index_of(tl.hyp_speakers, seg.speaker)});
  }

  detail::sweep(intervals, r + h + 1, [&](std::int64_t b, std::int64_t e, const std::vector<int>& active) {
    Slice slice{e - b, {}, {}};
    for (int label : active) {
      if (label == collar_label) return;
      if (label < r) {
        slice.ref_active.push_back(label);
      } else {
        slice.hyp_active.push_back(label - r);
      }
    }
    if (!opts.score_overlap && slice.ref_active.size() > 1) return;
    if (slice.ref_active.empty() && slice.hyp_active.empty()) return;
    tl.scored.push_back(std::move(slice));
  });
  return tl;
}

// Column for each ref speaker (or -1), maximizing co-occurring scored time.
std::vector<int> map_speakers(const Timeline& tl) {
  const std::size_t r = tl.ref_speakers.size(), h = tl.hyp_speakers.size();
  const std::size_t n = std::max(r, h);
  std::vector<int> mapped(r, -1);
  if (r == 0 || h == 0) return mapped;

  std::vector<std::vector<std::int64_t>> overlap(n, std::vector<std::int64_t>(n, 0));
  for (const auto& slice : tl.scored) {
    for (int a : slice.ref_active) {
      for (int b : slice.hyp_active) overlap[a][b] += slice.length;
    }
  }
  std::int64_t max_overlap = 0;
  for (const auto& row : overlap) max_overlap = std::max(max_overlap, *std::max_element(row.begin(), row.end()));
  CostMatrix cost(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = max_overlap - overlap[i][j];
  }
  const auto solved = assign_streams(cost);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = solved.col_for_row[i];
    if (j < h && overlap[i][j] > 0) mapped[i] = static_cast<int>(j);
  }
  return mapped;
}

}  // namespace

Duration to_duration(double seconds) { return Duration(std::llround(seconds * 1e6)); }

double to_seconds(Duration d) { return static_cast<double>(d.count()) / 1e6; }

double DerResult::missed_rate() const { return ratio(missed.count(), scored_speech.count()); }
double DerResult::false_alarm_rate() const { return ratio(false_alarm.count(), scored_speech.count()); }
double DerResult::confusion_rate() const { return ratio(confusion.count(), scored_speech.count()); }
double DerResult::der() const {
  return ratio((missed + false_alarm + confusion).count(), scored_speech.count());
}

DerResult& DerResult::operator+=(const DerResult& o) {
  missed += o.missed;
  false_alarm += o.false_alarm;
  confusion += o.confusion;
  scored_speech += o.scored_speech;
  return *this;
}

double SpkCountResult::missed_pct() const { return 100.0 * ratio(missed_speakers, ref_speakers); }
double SpkCountResult::false_alarm_pct() const {
  return 100.0 * ratio(false_alarm_speakers, ref_speakers);
}

SpkCountResult& SpkCountResult::operator+=(const SpkCountResult& o) {
  ref_speakers += o.ref_speakers;
  missed_speakers += o.missed_speakers;
  false_alarm_speakers += o.false_alarm_speakers;
  return *this;
}

SpeakerMapping optimal_speaker_mapping(const SegLst& ref, const SegLst& hyp, const DerOptions& opts) {
  const Timeline tl = build_timeline(ref, hyp, opts);
  const auto mapped = map_speakers(tl);
  SpeakerMapping out;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    if (mapped[i] >= 0) out.emplace(tl.ref_speakers[i], tl.hyp_speakers[mapped[i]]);
  }
  return out;
}

DerResult der(const SegLst& ref, const SegLst& hyp, const DerOptions& opts) {
  const Timeline tl = build_timeline(ref, hyp, opts);
  const auto mapped = map_speakers(tl);

  std::int64_t missed = 0, false_alarm = 0, confusion = 0, scored = 0;
  for (const auto& slice : tl.scored) {
    const auto r = static_cast<std::int64_t>(slice.ref_active.size());
    const auto h = static_cast<std::int64_t>(slice.hyp_active.size());
    std::int64_t correct = 0;
    for (int a : slice.ref_active) {
      if (mapped[a] >= 0 && std::binary_search(slice.hyp_active.begin(), slice.hyp_active.end(), mapped[a])) {
        ++correct;
      }
    }
    scored += r * slice.length;
    missed += std::max<std::int64_t>(0, r - h) * slice.length;
    false_alarm += std::max<std::int64_t>(0, h - r) * slice.length;
    confusion += (std::min(r, h) - correct) * slice.length;
  }
  if (scored == 0) throw UndefinedRateError("DER undefined: no scored reference speech");
  return {Duration(missed), Duration(false_alarm), Duration(confusion), Duration(scored)};
}

SpkCountResult speaker_count_errors(const SegLst& ref, const SegLst& hyp) {
  const auto ref_sessions = split_by_session(ref);
  const auto hyp_sessions = split_by_session(hyp);
  for (const auto& [id, segs] : hyp_sessions) {
    if (!ref_sessions.count(id)) throw ScoringError("session \"" + id + "\" is not in the reference");
  }
  SpkCountResult out;
  for (const auto& [id, segs] : ref_sessions) {
    const auto r = static_cast<std::int64_t>(segs.speakers().size());
    const auto it = hyp_sessions.find(id);
    const auto h = it == hyp_sessions.end() ? 0 : static_cast<std::int64_t>(it->second.speakers().size());
    out += SpkCountResult{r, std::max<std::int64_t>(0, r - h), std::max<std::int64_t>(0, h - r)};
  }
  return out;
}

}  // namespace dasr
