#include "dasr/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "parallel.hpp"

namespace fs = std::filesystem;

namespace dasr {

namespace {

using SessionMap = std::map<std::string, SegLst>;

enum class TextMode { normalize, as_is };

nlohmann::ordered_json collar_json(double collar) {
  if (std::isinf(collar)) return "inf";
  return collar;
}

// Reads, validates and optionally normalizes one segLST file. Validation
// errors are fatal; with `tolerate_empty` segments with an empty transcript
// are dropped instead.
SegLst load_file(const fs::path& path, const ScoreOptions& opts, TextMode mode, bool tolerate_empty) {
  SegLst segs;
  try {
    segs = read_seglst(path);
  } catch (const Error& e) {
    throw ScoringError(path.string() + ": " + e.what());
  }
  for (const auto& v : validate(segs)) {
    if (v.severity != Severity::error) continue;
    if (tolerate_empty && v.kind == "empty transcript") continue;
    throw ScoringError(path.string() + ": segment " + std::to_string(v.index) + ": " + v.message);
  }
  if (mode == TextMode::normalize && !opts.pre_normalized) {
    return normalize_seglst(segs, opts.norm);
  }
  if (tolerate_empty) {
    std::vector<Segment> kept;
    for (const auto& s : segs) {
      if (s.words.find_first_not_of(" \t\r\n") != std::string::npos) kept.push_back(s);
    }
    return SegLst(std::move(kept));
  }
  return segs;
}

void merge_into(SessionMap& sessions, const SegLst& segs) {
  for (auto& [id, part] : split_by_session(segs)) {
    auto& dst = sessions[id];
    std::vector<Segment> all = dst.segments();
    all.insert(all.end(), part.begin(), part.end());
    dst = SegLst(std::move(all));
  }
}

TranscriptionKind ref_kind(const ScoreOptions& opts) {
  return opts.pre_normalized ? TranscriptionKind::scoring : TranscriptionKind::original;
}

SessionMap load_reference(const fs::path& root, const std::string& scenario, const ScoreOptions& opts,
                          TextMode mode) {
  const auto manifest = scan_layout(root, scenario, opts.split, ref_kind(opts));
  SessionMap sessions;
  for (const auto& [name, path] : manifest.session_files) {
    const auto segs = load_file(path, opts, mode, false);
    // sessions emptied by normalization still have to be scored
    if (segs.empty()) sessions[name];
    merge_into(sessions, segs);
  }
  return sessions;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SessionMap> load_hypothesis(const fs::path& root, const std::string& scenario,
                                          const ScoreOptions& opts, TextMode mode) {
  const fs::path base = root / scenario;
  std::vector<fs::path> files;
  if (fs::is_directory(base / opts.split)) {
    files = json_files(base / opts.split);
  } else if (fs::is_regular_file(base / (opts.split + ".json"))) {
    files = {base / (opts.split + ".json")};
  } else if (fs::is_directory(base / folder_name(ref_kind(opts)) / opts.split)) {
    files = json_files(base / folder_name(ref_kind(opts)) / opts.split);
  } else {
    return std::nullopt;
  }
  SessionMap sessions;
  for (const auto& path : files) merge_into(sessions, load_file(path, opts, mode, true));
  return sessions;
}

std::vector<std::string> scenarios_to_score(const fs::path& ref_root, const ScoreOptions& opts) {
  if (!opts.scenarios.empty()) return opts.scenarios;
  std::vector<std::string> out;
  for (auto& s : list_scenarios(ref_root, ref_kind(opts))) {
    if (fs::is_directory(ref_root / s / folder_name(ref_kind(opts)) / opts.split)) out.push_back(s);
  }
  if (out.empty()) {
    throw ScoringError("no reference scenario has a \"" + opts.split + "\" split under " +
                       ref_root.string());
  }
  return out;
}

struct WorkItem {
  std::string scenario;
  std::string session;
  SegLst ref;
  SegLst hyp;
  bool missing = false;
};

std::vector<WorkItem> pair_sessions(const fs::path& ref_root, const fs::path& hyp_root,
                                    const ScoreOptions& opts, TextMode mode) {
  std::vector<WorkItem> items;
  std::vector<std::string> missing;
  for (const auto& scenario : scenarios_to_score(ref_root, opts)) {
    auto refs = load_reference(ref_root, scenario, opts, mode);
    auto hyps = load_hypothesis(hyp_root, scenario, opts, mode);
    if (hyps) {
      for (const auto& [id, segs] : *hyps) {
        if (!refs.count(id)) {
          throw ScoringError("hypothesis session " + scenario + "/" + id + " is not in the reference");
        }
      }
    }
    for (auto& [id, ref] : refs) {
      WorkItem item{scenario, id, std::move(ref), {}, false};
      if (hyps && hyps->count(id)) {
        item.hyp = std::move(hyps->at(id));
      } else {
        item.missing = true;
        missing.push_back(scenario + "/" + id);
      }
      items.push_back(std::move(item));
    }
  }
  if (!missing.empty() && !opts.allow_missing) throw MissingSessionsError(std::move(missing));
  return items;
}

nlohmann::ordered_json counts_json(const AlignmentCounts& c) {
  nlohmann::ordered_json j;
  j["error_rate"] = c.error_rate();
  j["errors"] = c.errors();
  j["ref_words"] = c.ref_words();
  j["hyp_words"] = c.hyp_words();
  j["substitutions"] = c.substitutions;
  j["insertions"] = c.insertions;
  j["deletions"] = c.deletions;
  j["correct"] = c.correct;
  return j;
}

AlignmentCounts counts_from_json(const nlohmann::json& j) {
  AlignmentCounts c;
  c.substitutions = j.at("substitutions").get<std::int64_t>();
  c.insertions = j.at("insertions").get<std::int64_t>();
  c.deletions = j.at("deletions").get<std::int64_t>();
  c.correct = j.at("correct").get<std::int64_t>();
  return c;
}

std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * fraction);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      out += c == 0 ? row[c] + pad : pad + row[c];
      if (c + 1 < row.size()) out += "  ";
    }
    out += "\n";
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

nlohmann::ordered_json normalization_json(const ScoreOptions& opts) {
  nlohmann::ordered_json j;
  j["version"] = opts.norm.version;
  j["fingerprint"] = norm_fingerprint(opts.norm);
  return j;
}

}  // namespace

MissingSessionsError::MissingSessionsError(std::vector<std::string> missing)
    : ScoringError([&] {
        std::string msg = std::to_string(missing.size()) + " reference session(s) without hypothesis:";
        for (const auto& m : missing) msg += " " + m;
        return msg;
      }()),
      missing_(std::move(missing)) {}

std::string system_name(const fs::path& hyp_root) {
  fs::path p = hyp_root.lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  return p.filename().string();
}

// ---------------------------------------------------------------------------
// tcpWER / cpWER

ScoreReport score_submission(const fs::path& ref_root, const fs::path& hyp_root,
                             const ScoreOptions& opts) {
  auto items = pair_sessions(ref_root, hyp_root, opts, TextMode::normalize);

  ScoreReport report;
  report.system = system_name(hyp_root);
  report.per_session.resize(items.size());
  detail::parallel_for(items.size(), opts.jobs, [&](std::size_t i) {
    const auto& item = items[i];
    auto& rec = report.per_session[i];
    rec.scenario = item.scenario;
    rec.session = item.session;
    rec.missing = item.missing;
    try {
      rec.tcp = tcp_wer(item.ref, item.hyp, opts.collar).total_counts;
      rec.cp = cp_wer(item.ref, item.hyp).total_counts;
    } catch (const UndefinedRateError& e) {
      throw ScoringError(item.scenario + "/" + item.session + ": " + e.what());
    }
  });

  std::vector<std::string> scenarios;
  for (const auto& item : items) {
    if (scenarios.empty() || scenarios.back() != item.scenario) scenarios.push_back(item.scenario);
  }
  auto& cfg = report.config;
  cfg["metric"] = "tcpWER";
  cfg["split"] = opts.split;
  cfg["scenarios"] = scenarios;
  cfg["collar"] = collar_json(opts.collar);
  cfg["word_timing"] = "equal-partition";
  cfg["collar_side"] = "reference";
  cfg["scenario_pooling"] = "micro";
  cfg["ranking_average"] = "macro";
  cfg["pre_normalized"] = opts.pre_normalized;
  cfg["allow_missing"] = opts.allow_missing;
  cfg["normalization"] = normalization_json(opts);
  aggregate(report);
  return report;
}

void aggregate(ScoreReport& report) {
  report.per_scenario.clear();
  for (const auto& s : report.per_session) {
    if (report.per_scenario.empty() || report.per_scenario.back().scenario != s.scenario) {
      report.per_scenario.push_back({s.scenario, 0, {}, {}});
    }
    auto& sc = report.per_scenario.back();
    ++sc.sessions;
    sc.tcp += s.tcp;
    sc.cp += s.cp;
  }
  double tcp = 0.0, cp = 0.0;
  for (const auto& sc : report.per_scenario) {
    tcp += sc.tcp.error_rate();
    cp += sc.cp.error_rate();
  }
  const auto n = static_cast<double>(report.per_scenario.size());
  report.macro_tcpwer = report.per_scenario.empty() ? 0.0 : tcp / n;
  report.macro_cpwer = report.per_scenario.empty() ? 0.0 : cp / n;
}

std::string report_to_json(const ScoreReport& report) {
  nlohmann::ordered_json j;
  j["system"] = report.system;
  j["config"] = report.config;
  j["macro"] = {{"tcpwer", report.macro_tcpwer},
                {"cpwer", report.macro_cpwer},
                {"scenarios", report.per_scenario.size()}};
  auto& scenarios = j["per_scenario"] = nlohmann::ordered_json::array();
  for (const auto& sc : report.per_scenario) {
    nlohmann::ordered_json row;
    row["scenario"] = sc.scenario;
    row["sessions"] = sc.sessions;
    row["tcpwer"] = counts_json(sc.tcp);
    row["cpwer"] = counts_json(sc.cp);
    scenarios.push_back(std::move(row));
  }
  auto& sessions = j["per_session"] = nlohmann::ordered_json::array();
  for (const auto& s : report.per_session) {
    nlohmann::ordered_json row;
    row["scenario"] = s.scenario;
    row["session"] = s.session;
    row["missing"] = s.missing;
    row["tcpwer"] = counts_json(s.tcp);
    row["cpwer"] = counts_json(s.cp);
    sessions.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

ScoreReport report_from_json(std::string_view json) {
  const auto j = nlohmann::ordered_json::parse(json.begin(), json.end());
  ScoreReport report;
  report.system = j.at("system").get<std::string>();
  report.config = j.at("config");
  for (const auto& row : j.at("per_session")) {
    report.per_session.push_back({row.at("scenario").get<std::string>(),
                                  row.at("session").get<std::string>(), row.at("missing").get<bool>(),
                                  counts_from_json(row.at("tcpwer")), counts_from_json(row.at("cpwer"))});
  }
  for (const auto& row : j.at("per_scenario")) {
    report.per_scenario.push_back({row.at("scenario").get<std::string>(),
                                   row.at("sessions").get<std::int64_t>(),
                                   counts_from_json(row.at("tcpwer")), counts_from_json(row.at("cpwer"))});
  }
  report.macro_tcpwer = j.at("macro").at("tcpwer").get<double>();
  report.macro_cpwer = j.at("macro").at("cpwer").get<double>();
  return report;
}

std::string render_text(const ScoreReport& report) {
  std::vector<std::vector<std::string>> rows = {
      {"Scenario", "Sessions", "Ref words", "cpWER (%)", "tcpWER (%)"}};
  std::int64_t sessions = 0, words = 0;
  for (const auto& sc : report.per_scenario) {
    rows.push_back({sc.scenario, std::to_string(sc.sessions), std::to_string(sc.tcp.ref_words()),
                    pct(sc.cp.error_rate()), pct(sc.tcp.error_rate())});
    sessions += sc.sessions;
    words += sc.tcp.ref_words();
  }
  rows.push_back({"Macro", std::to_string(sessions), std::to_string(words), pct(report.macro_cpwer),
                  pct(report.macro_tcpwer)});
  std::string collar = report.config.contains("collar") ? report.config["collar"].dump() : "?";
  return "system: " + report.system + " (tcpWER collar " + collar + " s)\n" + aligned(rows);
}

std::string render_csv(const ScoreReport& report) {
  std::string out =
      "level,scenario,session,missing,tcp_errors,tcp_ref_words,tcpwer,cp_errors,cp_ref_words,cpwer\n";
  for (const auto& s : report.per_session) {
    out += "session," + csv_field(s.scenario) + "," + csv_field(s.session) + "," +
           (s.missing ? "1" : "0") + "," + std::to_string(s.tcp.errors()) + "," +
           std::to_string(s.tcp.ref_words()) + "," + num(s.tcp.error_rate()) + "," +
           std::to_string(s.cp.errors()) + "," + std::to_string(s.cp.ref_words()) + "," +
           num(s.cp.error_rate()) + "\n";
  }
  for (const auto& sc : report.per_scenario) {
    out += "scenario," + csv_field(sc.scenario) + ",,," + std::to_string(sc.tcp.errors()) + "," +
           std::to_string(sc.tcp.ref_words()) + "," + num(sc.tcp.error_rate()) + "," +
           std::to_string(sc.cp.errors()) + "," + std::to_string(sc.cp.ref_words()) + "," +
           num(sc.cp.error_rate()) + "\n";
  }
  out += "macro,,,,,," + num(report.macro_tcpwer) + ",,," + num(report.macro_cpwer) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// DER

DiarReport score_diarization(const fs::path& ref_root, const fs::path& hyp_root,
                             const ScoreOptions& opts) {
  auto items = pair_sessions(ref_root, hyp_root, opts, TextMode::as_is);

  DiarReport report;
  report.system = system_name(hyp_root);
  report.per_session.resize(items.size());
  detail::parallel_for(items.size(), opts.jobs, [&](std::size_t i) {
    const auto& item = items[i];
    auto& rec = report.per_session[i];
    rec.scenario = item.scenario;
    rec.session = item.session;
    rec.missing = item.missing;
    try {
      rec.der = der(item.ref, item.hyp, opts.der);
      rec.spk = speaker_count_errors(item.ref, item.hyp);
    } catch (const UndefinedRateError& e) {
      throw ScoringError(item.scenario + "/" + item.session + ": " + e.what());
    }
  });

  for (const auto& s : report.per_session) {
    if (report.per_scenario.empty() || report.per_scenario.back().scenario != s.scenario) {
      report.per_scenario.push_back({s.scenario, 0, {}, {}});
    }
    auto& sc = report.per_scenario.back();
    ++sc.sessions;
    sc.der += s.der;
    sc.spk += s.spk;
  }
  for (const auto& sc : report.per_scenario) {
    report.macro_der += sc.der.der();
    report.macro_missed += sc.der.missed_rate();
    report.macro_false_alarm += sc.der.false_alarm_rate();
    report.macro_confusion += sc.der.confusion_rate();
    report.macro_spk_missed_pct += sc.spk.missed_pct();
    report.macro_spk_false_alarm_pct += sc.spk.false_alarm_pct();
  }
  if (!report.per_scenario.empty()) {
    const auto n = static_cast<double>(report.per_scenario.size());
    report.macro_der /= n;
    report.macro_missed /= n;
    report.macro_false_alarm /= n;
    report.macro_confusion /= n;
    report.macro_spk_missed_pct /= n;
    report.macro_spk_false_alarm_pct /= n;
  }

  std::vector<std::string> scenarios;
  for (const auto& sc : report.per_scenario) scenarios.push_back(sc.scenario);
  auto& cfg = report.config;
  cfg["metric"] = "DER";
  cfg["split"] = opts.split;
  cfg["scenarios"] = scenarios;
  cfg["der_collar"] = opts.der.collar;
  cfg["score_overlap"] = opts.der.score_overlap;
  cfg["scenario_pooling"] = "micro";
  cfg["ranking_average"] = "macro";
  cfg["pre_normalized"] = opts.pre_normalized;
  cfg["allow_missing"] = opts.allow_missing;
  return report;
}

namespace {

nlohmann::ordered_json der_json(const DerResult& d, const SpkCountResult& spk) {
  nlohmann::ordered_json j;
  j["der"] = d.der();
  j["missed"] = d.missed_rate();
  j["false_alarm"] = d.false_alarm_rate();
  j["confusion"] = d.confusion_rate();
  j["missed_s"] = to_seconds(d.missed);
  j["false_alarm_s"] = to_seconds(d.false_alarm);
  j["confusion_s"] = to_seconds(d.confusion);
  j["scored_speech_s"] = to_seconds(d.scored_speech);
  j["ref_speakers"] = spk.ref_speakers;
  j["missed_speakers"] = spk.missed_speakers;
  j["false_alarm_speakers"] = spk.false_alarm_speakers;
  j["spk_missed_pct"] = spk.missed_pct();
  j["spk_false_alarm_pct"] = spk.false_alarm_pct();
  return j;
}

}  // namespace

std::string report_to_json(const DiarReport& report) {
  nlohmann::ordered_json j;
  j["system"] = report.system;
  j["config"] = report.config;
  nlohmann::ordered_json macro;
  macro["der"] = report.macro_der;
  macro["missed"] = report.macro_missed;
  macro["false_alarm"] = report.macro_false_alarm;
  macro["confusion"] = report.macro_confusion;
  macro["spk_missed_pct"] = report.macro_spk_missed_pct;
  macro["spk_false_alarm_pct"] = report.macro_spk_false_alarm_pct;
  macro["scenarios"] = report.per_scenario.size();
  j["macro"] = std::move(macro);
  auto& scenarios = j["per_scenario"] = nlohmann::ordered_json::array();
  for (const auto& sc : report.per_scenario) {
    nlohmann::ordered_json row;
    row["scenario"] = sc.scenario;
    row["sessions"] = sc.sessions;
    row.update(der_json(sc.der, sc.spk));
    scenarios.push_back(std::move(row));
  }
  auto& sessions = j["per_session"] = nlohmann::ordered_json::array();
  for (const auto& s : report.per_session) {
    nlohmann::ordered_json row;
    row["scenario"] = s.scenario;
    row["session"] = s.session;
    row["missing"] = s.missing;
    row.update(der_json(s.der, s.spk));
    sessions.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string render_text(const DiarReport& report) {
  std::vector<std::vector<std::string>> rows = {
      {"Scenario", "Sessions", "DER (%)", "MS (%)", "FA (%)", "SC (%)", "#SPK MS (%)", "#SPK FA (%)"}};
  std::int64_t sessions = 0;
  for (const auto& sc : report.per_scenario) {
    rows.push_back({sc.scenario, std::to_string(sc.sessions), pct(sc.der.der()),
                    pct(sc.der.missed_rate()), pct(sc.der.false_alarm_rate()),
                    pct(sc.der.confusion_rate()), pct(sc.spk.missed_pct() / 100.0),
                    pct(sc.spk.false_alarm_pct() / 100.0)});
    sessions += sc.sessions;
  }
  rows.push_back({"Macro", std::to_string(sessions), pct(report.macro_der), pct(report.macro_missed),
                  pct(report.macro_false_alarm), pct(report.macro_confusion),
                  pct(report.macro_spk_missed_pct / 100.0), pct(report.macro_spk_false_alarm_pct / 100.0)});
  return "system: " + report.system + " (DER collar " + report.config["der_collar"].dump() + " s)\n" +
         aligned(rows);
}

std::string render_csv(const DiarReport& report) {
  std::string out =
      "level,scenario,session,missing,der,missed,false_alarm,confusion,scored_speech_s,"
      "spk_missed_pct,spk_false_alarm_pct\n";
  auto line = [&](const std::string& level, const std::string& scenario, const std::string& session,
                  const std::string& missing, const DerResult& d, const SpkCountResult& spk) {
    out += level + "," + csv_field(scenario) + "," + csv_field(session) + "," + missing + "," +
           num(d.der()) + "," + num(d.missed_rate()) + "," + num(d.false_alarm_rate()) + "," +
           num(d.confusion_rate()) + "," + num(to_seconds(d.scored_speech)) + "," +
           num(spk.missed_pct()) + "," + num(spk.false_alarm_pct()) + "\n";
  };
  for (const auto& s : report.per_session) line("session", s.scenario, s.session, s.missing ? "1" : "0", s.der, s.spk);
  for (const auto& sc : report.per_scenario) line("scenario", sc.scenario, "", "", sc.der, sc.spk);
  out += "macro,,,," + num(report.macro_der) + "," + num(report.macro_missed) + "," +
         num(report.macro_false_alarm) + "," + num(report.macro_confusion) + ",," +
         num(report.macro_spk_missed_pct) + "," + num(report.macro_spk_false_alarm_pct) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// prep / validate / stats

std::vector<PrepFile> prepare_scoring(const fs::path& root, const NormConfig& cfg) {
  std::vector<PrepFile> out;
  for (const auto& scenario : list_scenarios(root)) {
    for (const auto& split : list_splits(root, scenario)) {
      const auto manifest = scan_layout(root, scenario, split);
      for (const auto& [session, path] : manifest.session_files) {
        SegLst segs;
        try {
          segs = read_seglst(path);
        } catch (const Error& e) {
          throw ValueError(path.string() + ": " + e.what());
        }
        for (const auto& v : validate(segs)) {
          if (v.severity == Severity::error) {
            throw ValueError(path.string() + ": segment " + std::to_string(v.index) + ": " + v.message);
          }
        }
        auto normalized = normalize_seglst_counted(segs, cfg);
        const fs::path target =
            root / scenario / folder_name(TranscriptionKind::scoring) / split / path.filename();
        const std::string content = write_seglst(normalized.segments);
        const bool changed = !fs::exists(target) || read_file(target) != content;
        if (changed) write_file(target, content);
        out.push_back({path, target, normalized.segments.size(), normalized.dropped, changed});
      }
    }
  }
  if (out.empty()) throw Error("nothing to prepare under " + root.string());
  return out;
}

std::string format_finding(const Finding& f) {
  std::string out = f.path.string();
  if (f.byte_offset) out += ": byte " + std::to_string(*f.byte_offset);
  if (f.segment) out += ": segment " + std::to_string(*f.segment);
  out += f.severity == Severity::error ? ": error: " : ": warning: ";
  return out + f.message;
}

std::vector<Finding> validate_tree(const fs::path& root) {
  std::vector<Finding> findings;
  if (!fs::is_directory(root)) {
    findings.push_back({root, Severity::error, "not a directory", {}, {}});
    return findings;
  }
  bool any = false;
  for (auto kind : {TranscriptionKind::original, TranscriptionKind::scoring}) {
    for (const auto& scenario : list_scenarios(root, kind)) {
      any = true;
      for (const auto& split : list_splits(root, scenario, kind)) {
        LayoutManifest manifest;
        try {
          manifest = scan_layout(root, scenario, split, kind);
        } catch (const LayoutError& e) {
          findings.push_back({e.path(), Severity::error, std::string("layout: ") + e.what(), {}, {}});
          continue;
        }
        std::map<std::string, fs::path> owner;  // session id -> first file containing it
        for (const auto& [stem, path] : manifest.session_files) {
          SegLst segs;
          try {
            segs = read_seglst(path);
          } catch (const ParseError& e) {
            findings.push_back({path, Severity::error, e.what(), e.byte_offset(), {}});
            continue;
          } catch (const SchemaError& e) {
            findings.push_back({path, Severity::error, e.what(), {}, e.index()});
            continue;
          } catch (const Error& e) {
            findings.push_back({path, Severity::error, e.what(), {}, {}});
            continue;
          }
          for (const auto& v : validate(segs)) {
            findings.push_back({path, v.severity, v.kind + ": " + v.message, {}, v.index});
          }
          for (const auto& sid : segs.session_ids()) {
            if (sid != stem) {
              findings.push_back({path, Severity::error,
                                  "session_id \"" + sid + "\" does not match the file name", {}, {}});
            }
            auto [it, inserted] = owner.emplace(sid, path);
            if (!inserted) {
              findings.push_back({path, Severity::error,
                                  "layout: session \"" + sid + "\" is also in " + it->second.string(),
                                  {}, {}});
            }
          }
        }
      }
    }
  }
  if (!any) findings.push_back({root, Severity::error, "no scenario with a transcriptions folder", {}, {}});
  return findings;
}

std::vector<SplitStats> corpus_stats(const fs::path& root, const SessionDurations& durations) {
  std::vector<SplitStats> rows;
  for (const auto& scenario : list_scenarios(root)) {
    for (const auto& split : list_splits(root, scenario)) {
      rows.push_back(split_stats(scan_layout(root, scenario, split), durations));
    }
  }
  return rows;
}

}  // namespace dasr
