#pragma once

// Corpus activity statistics: silence, single-speaker and overlapped speech
// over the session duration, plus utterance/speaker/session counts per split.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dasr/diarmetrics.hpp"
#include "dasr/seglst.hpp"

namespace dasr {

struct ActivityStats {
  Duration total{0};
  Duration silence{0};
  Duration single{0};
  Duration overlap{0};

  ActivityStats& operator+=(const ActivityStats& o);
  friend bool operator==(const ActivityStats&, const ActivityStats&) = default;
};

/// Sweep over one session on [0, session_end]. session_end defaults to the
/// latest end_time; a smaller value is a ContractError.
ActivityStats session_activity(const SegLst& s, std::optional<double> session_end = std::nullopt);

struct SplitStats {
  std::string scenario;
  std::string split;
  std::int64_t utterances = 0;
  std::int64_t speakers = 0;
  std::int64_t sessions = 0;
  ActivityStats activity;

  double size_hours() const { return to_seconds(activity.total) / 3600.0; }
  /// Percentages of the total duration; nullopt when nothing is annotated.
  std::optional<double> silence_pct() const;
  std::optional<double> single_pct() const;
  std::optional<double> overlap_pct() const;

  friend bool operator==(const SplitStats&, const SplitStats&) = default;
};

using SessionDurations = std::map<std::string, double>;

/// Reads the `durations.json` sidecar (session id -> seconds).
SessionDurations load_session_durations(const std::filesystem::path& path);

/// Aggregates every session file of the manifest; sums durations before
/// dividing. Parse/validation errors name the offending file.
SplitStats split_stats(const LayoutManifest& manifest, const SessionDurations& durations = {});

/// "H:MM", rounded to the minute.
std::string format_hours(Duration total);

std::string render_stats_table(const std::vector<SplitStats>& rows);
nlohmann::json stats_to_json(const SplitStats& row);
SplitStats stats_from_json(const nlohmann::json& j);

}  // namespace dasr
