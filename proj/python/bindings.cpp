// Python bindings. segLST data crosses the boundary as JSON text; the
// dasr_eval package wraps these functions with dict/list conversions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>

#include "dasr/align.hpp"
#include "dasr/diarmetrics.hpp"
#include "dasr/error.hpp"
#include "dasr/scoring.hpp"
#include "dasr/seglst.hpp"
#include "dasr/stats.hpp"
#include "dasr/textnorm.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace dasr;

namespace {

NormConfig config_from(const std::optional<fs::path>& path) {
  return path ? load_norm_config(*path) : default_norm_config();
}

py::dict counts_dict(const AlignmentCounts& c) {
  py::dict d;
  d["substitutions"] = c.substitutions;
  d["insertions"] = c.insertions;
  d["deletions"] = c.deletions;
  d["correct"] = c.correct;
  d["errors"] = c.errors();
  d["ref_words"] = c.ref_words();
  d["hyp_words"] = c.hyp_words();
  if (c.ref_words() > 0) {
    d["error_rate"] = c.error_rate();
  } else {
    d["error_rate"] = py::none();
  }
  return d;
}

py::dict assignment_dict(const SpeakerAssignment& a) {
  py::dict d = counts_dict(a.total_counts);
  py::list pairs;
  for (const auto& p : a.pairs) {
    py::dict row = counts_dict(p.counts);
    row["ref_speaker"] = p.ref_speaker;
    row["hyp_speaker"] = p.hyp_speaker;
    pairs.append(row);
  }
  d["pairs"] = pairs;
  return d;
}

ScoreOptions score_options(const std::string& split, const std::vector<std::string>& scenarios, double collar,
                           const std::optional<fs::path>& norm_config, bool pre_normalized, bool allow_missing,
                           double der_collar, bool score_overlap, unsigned jobs) {
  ScoreOptions o;
  o.split = split;
  o.scenarios = scenarios;
  o.collar = collar;
  o.norm = config_from(norm_config);
  o.pre_normalized = pre_normalized;
  o.allow_missing = allow_missing;
  o.der = {der_collar, score_overlap};
  o.jobs = jobs;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of dasr_eval";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", error.ptr());
  py::register_exception<dasr::ValueError>(m, "InvalidValueError", error.ptr());
  py::register_exception<LayoutError>(m, "LayoutError", error.ptr());
  py::register_exception<ContractError>(m, "ContractError", error.ptr());
  py::register_exception<UndefinedRateError>(m, "UndefinedRateError", error.ptr());
  auto scoring = py::register_exception<ScoringError>(m, "ScoringError", error.ptr());
  py::register_exception<MissingSessionsError>(m, "MissingSessionsError", scoring.ptr());

  m.attr("INFINITE_COLLAR") = kInfiniteCollar;

  // segLST
  m.def("canonical_seglst", [](const std::string& json) { return write_seglst(parse_seglst(json)); },
        py::arg("json"));
  m.def(
      "validate_seglst",
      [](const std::string& json) {
        py::list out;
        for (const auto& v : validate(parse_seglst(json))) {
          py::dict d;
          d["index"] = v.index;
          d["kind"] = v.kind;
          d["severity"] = v.severity == Severity::error ? "error" : "warning";
          d["message"] = v.message;
          out.append(d);
        }
        return out;
      },
      py::arg("json"));

  // text normalization
  m.def("normalize_text",
        [](const std::string& text, const std::optional<fs::path>& cfg) { return normalize_text(text, config_from(cfg)); },
        py::arg("text"), py::arg("norm_config") = py::none());
  m.def("expand_numbers",
        [](const std::string& text, const std::optional<fs::path>& cfg) { return expand_numbers(text, config_from(cfg)); },
        py::arg("text"), py::arg("norm_config") = py::none());
  m.def(
      "normalize_seglst",
      [](const std::string& json, const std::optional<fs::path>& cfg) {
        return write_seglst(normalize_seglst(parse_seglst(json), config_from(cfg)));
      },
      py::arg("json"), py::arg("norm_config") = py::none());
  m.def(
      "norm_fingerprint", [](const std::optional<fs::path>& cfg) { return norm_fingerprint(config_from(cfg)); },
      py::arg("norm_config") = py::none());

  // word error counting
  m.def(
      "levenshtein",
      [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
        return counts_dict(levenshtein(ref, hyp));
      },
      py::arg("ref"), py::arg("hyp"));
  m.def(
      "cp_wer",
      [](const std::string& ref, const std::string& hyp) {
        return assignment_dict(cp_wer(parse_seglst(ref), parse_seglst(hyp)));
      },
      py::arg("ref"), py::arg("hyp"));
  m.def(
      "tcp_wer",
      [](const std::string& ref, const std::string& hyp, double collar) {
        return assignment_dict(tcp_wer(parse_seglst(ref), parse_seglst(hyp), collar));
      },
      py::arg("ref"), py::arg("hyp"), py::arg("collar") = kDefaultTcpCollar);

  // diarization
  m.def(
      "der",
      [](const std::string& ref, const std::string& hyp, double collar, bool score_overlap) {
        const auto r = der(parse_seglst(ref), parse_seglst(hyp), {collar, score_overlap});
        py::dict d;
        d["der"] = r.der();
        d["missed"] = r.missed_rate();
        d["false_alarm"] = r.false_alarm_rate();
        d["confusion"] = r.confusion_rate();
        d["scored_speech"] = to_seconds(r.scored_speech);
        return d;
      },
      py::arg("ref"), py::arg("hyp"), py::arg("collar") = 0.25, py::arg("score_overlap") = true);
  m.def(
      "speaker_count_errors",
      [](const std::string& ref, const std::string& hyp) {
        const auto r = speaker_count_errors(parse_seglst(ref), parse_seglst(hyp));
        py::dict d;
        d["ref_speakers"] = r.ref_speakers;
        d["missed_speakers"] = r.missed_speakers;
        d["false_alarm_speakers"] = r.false_alarm_speakers;
        d["missed_pct"] = r.missed_pct();
        d["false_alarm_pct"] = r.false_alarm_pct();
        return d;
      },
      py::arg("ref"), py::arg("hyp"));

  // statistics
  m.def(
      "session_activity",
      [](const std::string& json, std::optional<double> end) {
        const auto a = session_activity(parse_seglst(json), end);
        py::dict d;
        d["total"] = to_seconds(a.total);
        d["silence"] = to_seconds(a.silence);
        d["single"] = to_seconds(a.single);
        d["overlap"] = to_seconds(a.overlap);
        return d;
      },
      py::arg("json"), py::arg("session_end") = py::none());
  m.def(
      "corpus_stats",
      [](const fs::path& root) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : corpus_stats(root)) out.push_back(stats_to_json(r));
        return out.dump();
      },
      py::arg("root"));

  // challenge workflow
  m.def(
      "score",
      [](const fs::path& ref, const fs::path& hyp, const std::string& split, const std::vector<std::string>& scenarios,
         double collar, const std::optional<fs::path>& norm_config, bool pre_normalized, bool allow_missing,
         unsigned jobs) {
        const auto o = score_options(split, scenarios, collar, norm_config, pre_normalized, allow_missing, 0.25,
                                     true, jobs);
        py::gil_scoped_release release;
        return report_to_json(score_submission(ref, hyp, o));
      },
      py::arg("ref"), py::arg("hyp"), py::arg("split") = "dev", py::arg("scenarios") = std::vector<std::string>{},
      py::arg("collar") = kDefaultTcpCollar, py::arg("norm_config") = py::none(), py::arg("pre_normalized") = false,
      py::arg("allow_missing") = false, py::arg("jobs") = 1u);
  m.def(
      "score_diar",
      [](const fs::path& ref, const fs::path& hyp, const std::string& split, const std::vector<std::string>& scenarios,
         double der_collar, bool score_overlap, bool allow_missing, unsigned jobs) {
        const auto o = score_options(split, scenarios, kDefaultTcpCollar, std::nullopt, false, allow_missing,
                                     der_collar, score_overlap, jobs);
        py::gil_scoped_release release;
        return report_to_json(score_diarization(ref, hyp, o));
      },
      py::arg("ref"), py::arg("hyp"), py::arg("split") = "dev", py::arg("scenarios") = std::vector<std::string>{},
      py::arg("der_collar") = 0.25, py::arg("score_overlap") = true, py::arg("allow_missing") = false,
      py::arg("jobs") = 1u);
  m.def(
      "prep",
      [](const fs::path& root, const std::optional<fs::path>& norm_config) {
        py::list out;
        for (const auto& f : prepare_scoring(root, config_from(norm_config))) {
          py::dict d;
          d["source"] = f.source.string();
          d["target"] = f.target.string();
          d["segments"] = f.segments;
          d["dropped"] = f.dropped;
          d["changed"] = f.changed;
          out.append(d);
        }
        return out;
      },
      py::arg("root"), py::arg("norm_config") = py::none());
  m.def(
      "validate",
      [](const fs::path& root) {
        std::vector<std::string> out;
        for (const auto& f : validate_tree(root)) out.push_back(format_finding(f));
        return out;
      },
      py::arg("root"));
}
