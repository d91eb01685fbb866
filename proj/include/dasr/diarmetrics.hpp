#pragma once

// Diarization error rate (missed speech, false alarm, speaker confusion) and
// speaker-counting errors.
//
// Durations are accumulated on an integer microsecond grid so that the three
// components add up to the total exactly and results do not depend on
// summation order.

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include "dasr/seglst.hpp"

namespace dasr {

using Duration = std::chrono::microseconds;

Duration to_duration(double seconds);
double to_seconds(Duration d);

struct DerOptions {
  double collar = 0.25;       // seconds excluded on both sides of each ref boundary
  bool score_overlap = true;  // false: drop regions with more than one ref speaker
};

struct DerResult {
  Duration missed{0};
  Duration false_alarm{0};
  Duration confusion{0};
  Duration scored_speech{0};

  double missed_rate() const;
  double false_alarm_rate() const;
  double confusion_rate() const;
  /// (missed + false_alarm + confusion) / scored_speech; UndefinedRateError if
  /// nothing was scored.
  double der() const;

  DerResult& operator+=(const DerResult& o);
  friend bool operator==(const DerResult&, const DerResult&) = default;
};

struct SpkCountResult {
  std::int64_t ref_speakers = 0;
  std::int64_t missed_speakers = 0;
  std::int64_t false_alarm_speakers = 0;

  double missed_pct() const;
  double false_alarm_pct() const;

  SpkCountResult& operator+=(const SpkCountResult& o);
  friend bool operator==(const SpkCountResult&, const SpkCountResult&) = default;
};

/// ref speaker -> hyp speaker. Speakers without co-occurring time are absent.
using SpeakerMapping = std::map<std::string, std::string>;

/// One-to-one mapping maximizing total co-occurring speech time within the
/// regions scored under `opts` (the whole timeline by default).
SpeakerMapping optimal_speaker_mapping(const SegLst& ref, const SegLst& hyp,
                                       const DerOptions& opts = {0.0, true});

/// DER for one session. Throws ContractError on multi-session input.
DerResult der(const SegLst& ref, const SegLst& hyp, const DerOptions& opts = {});

/// Per-session speaker count differences summed over sessions. Throws
/// ScoringError when hyp contains a session absent from ref.
SpkCountResult speaker_count_errors(const SegLst& ref, const SegLst& hyp);

}  // namespace dasr
