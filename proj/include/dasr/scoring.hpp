#pragma once

// Challenge workflow on top of the metric modules: scoring a submission
// against a reference tree, diarization scoring, preparation of the
// normalized scoring copies, layout validation and corpus statistics.
//
// A hypothesis tree provides, per scenario, either
//   <hyp>/<scenario>/<split>/*.json      (one segLST per session)
//   <hyp>/<scenario>/<split>.json        (one segLST for all sessions)
//   <hyp>/<scenario>/transcriptions[_scoring]/<split>/*.json
// Sessions are identified by the session_id field inside the files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dasr/align.hpp"
#include "dasr/diarmetrics.hpp"
#include "dasr/error.hpp"
#include "dasr/stats.hpp"
#include "dasr/textnorm.hpp"

namespace dasr {

struct ScoreOptions {
  std::string split = "dev";
  std::vector<std::string> scenarios;  // empty: every scenario of the reference
  double collar = kDefaultTcpCollar;
  NormConfig norm = default_norm_config();
  bool pre_normalized = false;
  bool allow_missing = false;
  DerOptions der;
  unsigned jobs = 1;
};

/// Reference sessions without a hypothesis (fatal unless allow_missing).
class MissingSessionsError : public ScoringError {
 public:
  explicit MissingSessionsError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;  // "scenario/session"
};

struct SessionScore {
  std::string scenario;
  std::string session;
  bool missing = false;
  AlignmentCounts tcp;
  AlignmentCounts cp;
};

struct ScenarioScore {
  std::string scenario;
  std::int64_t sessions = 0;
  AlignmentCounts tcp;  // pooled over sessions
  AlignmentCounts cp;
};

struct ScoreReport {
  std::string system;
  nlohmann::ordered_json config;
  std::vector<SessionScore> per_session;
  std::vector<ScenarioScore> per_scenario;
  double macro_tcpwer = 0.0;
  double macro_cpwer = 0.0;
};

ScoreReport score_submission(const std::filesystem::path& ref_root,
                             const std::filesystem::path& hyp_root, const ScoreOptions& opts);

/// Per-scenario micro pooling and macro averaging of session records.
void aggregate(ScoreReport& report);

std::string report_to_json(const ScoreReport& report);
ScoreReport report_from_json(std::string_view json);
std::string render_text(const ScoreReport& report);
std::string render_csv(const ScoreReport& report);

struct DiarSessionScore {
  std::string scenario;
  std::string session;
  bool missing = false;
  DerResult der;
  SpkCountResult spk;
};

struct DiarScenarioScore {
  std::string scenario;
  std::int64_t sessions = 0;
  DerResult der;
  SpkCountResult spk;
};

struct DiarReport {
  std::string system;
  nlohmann::ordered_json config;
  std::vector<DiarSessionScore> per_session;
  std::vector<DiarScenarioScore> per_scenario;
  double macro_der = 0.0;
  double macro_missed = 0.0;
  double macro_false_alarm = 0.0;
  double macro_confusion = 0.0;
  double macro_spk_missed_pct = 0.0;
  double macro_spk_false_alarm_pct = 0.0;
};

DiarReport score_diarization(const std::filesystem::path& ref_root,
                             const std::filesystem::path& hyp_root, const ScoreOptions& opts);

std::string report_to_json(const DiarReport& report);
std::string render_text(const DiarReport& report);
std::string render_csv(const DiarReport& report);

struct PrepFile {
  std::filesystem::path source;
  std::filesystem::path target;
  std::size_t segments = 0;
  std::size_t dropped = 0;
  bool changed = false;
};

/// Writes transcriptions_scoring/ next to every transcriptions/ folder.
/// Throws Error("nothing to prepare") when no transcription file exists and
/// ValueError (with file and segment) on validation errors.
std::vector<PrepFile> prepare_scoring(const std::filesystem::path& root, const NormConfig& cfg);

struct Finding {
  std::filesystem::path path;
  Severity severity = Severity::error;
  std::string message;
  std::optional<std::size_t> byte_offset;
  std::optional<std::size_t> segment;
};

std::string format_finding(const Finding& f);

/// Layout + parse + validation over every scenario/split of both
/// transcription folders.
std::vector<Finding> validate_tree(const std::filesystem::path& root);

/// One row per scenario/split of the original transcriptions.
std::vector<SplitStats> corpus_stats(const std::filesystem::path& root,
                                     const SessionDurations& durations = {});

/// Directory name used as the system label of a hypothesis tree.
std::string system_name(const std::filesystem::path& hyp_root);

}  // namespace dasr
