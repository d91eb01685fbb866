// dasr-eval: layout validation, scoring-copy preparation, corpus statistics
// and submission scoring (tcpWER/cpWER, DER).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dasr/scoring.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kInputError = 2;

double parse_collar(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return dasr::kInfiniteCollar;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) {
    throw CLI::ValidationError("--collar", "expected a non-negative number of seconds or \"inf\"");
  }
  return v;
}

struct ScoreArgs {
  fs::path ref;
  std::vector<fs::path> hyps;
  std::string split = "dev";
  std::vector<std::string> scenarios;
  std::string collar = "5";
  std::string norm_config;
  bool pre_normalized = false;
  bool allow_missing = false;
  double der_collar = 0.25;
  bool no_overlap = false;
  unsigned jobs = 1;
  bool json = false;
  bool csv = false;
  std::string out;
};

void add_common_score_options(CLI::App* cmd, ScoreArgs& a) {
  cmd->add_option("--ref", a.ref, "Reference root")->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--hyp", a.hyps, "Hypothesis root (repeatable, up to 4 systems)")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--split", a.split, "Split to score")->capture_default_str();
  cmd->add_option("--scenario", a.scenarios, "Restrict to these scenarios (repeatable)");
  cmd->add_option("--norm-config", a.norm_config, "Normalization rule table")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--pre-normalized", a.pre_normalized,
                "Read transcriptions_scoring/ and skip normalization");
  cmd->add_flag("--allow-missing", a.allow_missing, "Score missing sessions as all deletions");
  cmd->add_option("--jobs", a.jobs, "Sessions scored in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--json", a.json, "Print the JSON report");
  cmd->add_flag("--csv", a.csv, "Print the CSV report");
  cmd->add_option("--out", a.out, "Write <system>.json/.csv/.txt into this directory");
}

dasr::ScoreOptions to_options(const ScoreArgs& a) {
  dasr::ScoreOptions opts;
  opts.split = a.split;
  opts.scenarios = a.scenarios;
  opts.collar = parse_collar(a.collar);
  if (!a.norm_config.empty()) opts.norm = dasr::load_norm_config(a.norm_config);
  opts.pre_normalized = a.pre_normalized;
  opts.allow_missing = a.allow_missing;
  opts.der.collar = a.der_collar;
  opts.der.score_overlap = !a.no_overlap;
  opts.jobs = a.jobs;
  return opts;
}

template <typename Report>
void emit(const ScoreArgs& a, const Report& report) {
  const std::string json = dasr::report_to_json(report);
  const std::string csv = dasr::render_csv(report);
  const std::string text = dasr::render_text(report);
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    dasr::write_file(dir / (report.system + ".json"), json);
    dasr::write_file(dir / (report.system + ".csv"), csv);
    dasr::write_file(dir / (report.system + ".txt"), text);
  }
  if (a.json) {
    std::cout << json;
  } else if (a.csv) {
    std::cout << csv;
  } else {
    std::cout << text;
  }
}

int check_hyps(const ScoreArgs& a) {
  if (a.hyps.size() > 4) {
    std::cerr << "error: at most 4 hypothesis systems per invocation\n";
    return kInputError;
  }
  std::set<std::string> names;
  for (const auto& h : a.hyps) {
    if (!names.insert(dasr::system_name(h)).second) {
      std::cerr << "error: two hypothesis roots share the system name \"" << dasr::system_name(h)
                << "\"\n";
      return kInputError;
    }
  }
  if (a.json && a.csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return kInputError;
  }
  return kOk;
}

int run_score(const ScoreArgs& a, bool diarization) {
  if (int rc = check_hyps(a); rc != kOk) return rc;
  const auto opts = to_options(a);
  for (const auto& hyp : a.hyps) {
    if (diarization) {
      emit(a, dasr::score_diarization(a.ref, hyp, opts));
    } else {
      emit(a, dasr::score_submission(a.ref, hyp, opts));
    }
  }
  return kOk;
}

int run_validate(const fs::path& root, bool json) {
  const auto findings = dasr::validate_tree(root);
  if (json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& f : findings) {
      nlohmann::ordered_json j;
      j["path"] = f.path.string();
      j["severity"] = f.severity == dasr::Severity::error ? "error" : "warning";
      j["message"] = f.message;
      if (f.byte_offset) j["byte_offset"] = *f.byte_offset;
      if (f.segment) j["segment"] = *f.segment;
      out.push_back(std::move(j));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& f : findings) std::cout << dasr::format_finding(f) << "\n";
    std::cout << findings.size() << " finding(s)\n";
  }
  return findings.empty() ? kOk : kFindings;
}

int run_prep(const fs::path& root, const std::string& norm_config) {
  const auto cfg = norm_config.empty() ? dasr::default_norm_config() : dasr::load_norm_config(norm_config);
  const auto files = dasr::prepare_scoring(root, cfg);
  std::size_t changed = 0, dropped = 0;
  for (const auto& f : files) {
    std::cout << f.target.string() << ": " << f.segments << " segment(s), " << f.dropped
              << " dropped" << (f.changed ? ", written" : ", unchanged") << "\n";
    changed += f.changed ? 1 : 0;
    dropped += f.dropped;
  }
  std::cout << files.size() << " file(s), " << changed << " changed, " << dropped
            << " segment(s) dropped\n";
  return kOk;
}

int run_stats(const fs::path& root, const std::string& durations, bool json) {
  const auto rows = dasr::corpus_stats(
      root, durations.empty() ? dasr::SessionDurations{} : dasr::load_session_durations(durations));
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) out.push_back(dasr::stats_to_json(r));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dasr::render_stats_table(rows);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHiME-style distant ASR evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dasr-eval 0.1.0");

  fs::path root;
  bool json = false;
  std::string norm_config;
  std::string durations;

  auto* validate = app.add_subcommand("validate", "Check layout, JSON syntax and segment invariants");
  validate->add_option("root", root, "Corpus root")->required()->check(CLI::ExistingDirectory);
  validate->add_flag("--json", json, "Print findings as JSON");

  auto* prep = app.add_subcommand("prep", "Write normalized transcriptions_scoring/ copies");
  prep->add_option("root", root, "Corpus root")->required()->check(CLI::ExistingDirectory);
  prep->add_option("--norm-config", norm_config, "Normalization rule table")->check(CLI::ExistingFile);

  auto* stats = app.add_subcommand("stats", "Corpus activity statistics per scenario and split");
  stats->add_option("root", root, "Corpus root")->required()->check(CLI::ExistingDirectory);
  stats->add_option("--durations", durations, "durations.json sidecar (session id -> seconds)")
      ->check(CLI::ExistingFile);
  stats->add_flag("--json", json, "Print JSON instead of the table");

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "tcpWER and cpWER of one or more submissions");
  add_common_score_options(score, score_args);
  score->add_option("--collar", score_args.collar, "tcpWER collar in seconds, or inf")
      ->capture_default_str();

  ScoreArgs diar_args;
  auto* score_diar = app.add_subcommand("score-diar", "DER and speaker counting errors");
  add_common_score_options(score_diar, diar_args);
  score_diar->add_option("--der-collar", diar_args.der_collar, "DER collar in seconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  score_diar->add_flag("--no-overlap-scoring", diar_args.no_overlap,
                       "Exclude regions with more than one reference speaker");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return run_validate(root, json);
    if (*prep) return run_prep(root, norm_config);
    if (*stats) return run_stats(root, durations, json);
    if (*score) return run_score(score_args, false);
    if (*score_diar) return run_score(diar_args, true);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const dasr::MissingSessionsError& e) {
    std::cerr << "error: missing hypothesis sessions (use --allow-missing to score them as deletions):\n";
    for (const auto& m : e.missing()) std::cerr << "  " << m << "\n";
    return kInputError;
  } catch (const dasr::ValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *prep ? kFindings : kInputError;
  } catch (const dasr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
