#include "dasr/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "dasr/error.hpp"
#include "sweep.hpp"

namespace dasr {

namespace {

std::optional<double> pct(Duration part, Duration total) {
  if (total.count() <= 0) return std::nullopt;
  return 100.0 * static_cast<double>(part.count()) / static_cast<double>(total.count());
}

std::string format_pct(std::optional<double> v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

}  // namespace

ActivityStats& ActivityStats::operator+=(const ActivityStats& o) {
  total += o.total;
  silence += o.silence;
  single += o.single;
  overlap += o.overlap;
  return *this;
}

ActivityStats session_activity(const SegLst& s, std::optional<double> session_end) {
  if (s.session_ids().size() > 1) throw ContractError("session_activity expects a single session");

  std::int64_t latest = 0;
  for (const auto& seg : s) latest = std::max(latest, to_duration(seg.end_time).count());
  std::int64_t end = latest;
  if (session_end) {
    end = to_duration(*session_end).count();
    if (end < latest) {
      throw ContractError("session end " + std::to_string(*session_end) +
                          " s precedes the last segment end");
    }
  }

  const auto speakers = s.speakers();
  const std::vector<std::string> labels(speakers.begin(), speakers.end());
  const int session_label = static_cast<int>(labels.size());
  std::vector<detail::LabeledInterval> intervals;
  intervals.reserve(s.size() + 1);
  intervals.push_back({0, end, session_label});
  for (const auto& seg : s) {
    const int label = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), seg.speaker) -
                                       labels.begin());
    intervals.push_back({std::max<std::int64_t>(0, to_duration(seg.start_time).count()),
                         to_duration(seg.end_time).count(), label});
  }

  ActivityStats out;
  out.total = Duration(end);
  detail::sweep(intervals, session_label + 1,
                [&](std::int64_t b, std::int64_t e, const std::vector<int>& active) {
                  const bool in_session = !active.empty() && active.back() == session_label;
                  if (!in_session) return;
                  const Duration len(e - b);
                  switch (active.size() - 1) {
                    case 0: out.silence += len; break;
                    case 1: out.single += len; break;
                    default: out.overlap += len; break;
                  }
                });
  return out;
}

std::optional<double> SplitStats::silence_pct() const { return pct(activity.silence, activity.total); }
std::optional<double> SplitStats::single_pct() const { return pct(activity.single, activity.total); }
std::optional<double> SplitStats::overlap_pct() const { return pct(activity.overlap, activity.total); }

SessionDurations load_session_durations(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON at byte " + std::to_string(e.byte), e.byte);
  }
  if (!doc.is_object()) throw SchemaError(path.string() + ": expected an object", "", 0);
  SessionDurations out;
  for (const auto& [id, value] : doc.items()) {
    if (!value.is_number()) throw ValueError(path.string() + ": duration of " + id + " is not a number");
    out[id] = value.get<double>();
  }
  return out;
}

SplitStats split_stats(const LayoutManifest& manifest, const SessionDurations& durations) {
  SplitStats out;
  out.scenario = manifest.scenario;
  out.split = manifest.split;
  std::set<std::string> speakers, sessions;
  for (const auto& [name, path] : manifest.session_files) {
    SegLst segs;
    try {
      segs = read_seglst(path);
    } catch (const Error& e) {
      throw Error(path.string() + ": " + e.what());
    }
    const auto violations = validate(segs);
    for (const auto& v : violations) {
      if (v.severity == Severity::error) {
        throw ValueError(path.string() + ": segment " + std::to_string(v.index) + ": " + v.message);
      }
    }
    out.utterances += static_cast<std::int64_t>(segs.size());
    for (const auto& [sid, part] : split_by_session(segs)) {
      if (!sessions.insert(sid).second) {
        throw LayoutError("session " + sid + " appears in more than one file", path);
      }
      const auto d = durations.find(sid);
      out.activity += session_activity(part, d == durations.end() ? std::nullopt
                                                                  : std::optional<double>(d->second));
      for (const auto& spk : part.speakers()) speakers.insert(spk);
    }
  }
  out.speakers = static_cast<std::int64_t>(speakers.size());
  out.sessions = static_cast<std::int64_t>(sessions.size());
  return out;
}

std::string format_hours(Duration total) {
  const long long minutes = (total.count() + 30'000'000LL) / 60'000'000LL;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld:%02lld", minutes / 60, minutes % 60);
  return buf;
}

std::string render_stats_table(const std::vector<SplitStats>& rows) {
  const std::vector<std::string> header = {"Scenario", "Split", "Size (h)", "Utts", "Spk.",
                                           "Sess.",    "sil (%)", "1-spk (%)", "ovl (%)"};
  std::vector<std::vector<std::string>> cells = {header};
  for (const auto& r : rows) {
    cells.push_back({r.scenario, r.split, format_hours(r.activity.total), std::to_string(r.utterances),
                     std::to_string(r.speakers), std::to_string(r.sessions), format_pct(r.silence_pct()),
                     format_pct(r.single_pct()), format_pct(r.overlap_pct())});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      // text columns left aligned, numbers right aligned
      line += c < 2 ? row[c] + pad : pad + row[c];
      if (c + 1 < row.size()) line += "  ";
    }
    out += line + "\n";
  }
  return out;
}

nlohmann::json stats_to_json(const SplitStats& row) {
  auto opt = [](std::optional<double> v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {
      {"scenario", row.scenario},
      {"split", row.split},
      {"size", format_hours(row.activity.total)},
      {"size_hours", row.size_hours()},
      {"utterances", row.utterances},
      {"speakers", row.speakers},
      {"sessions", row.sessions},
      {"silence_pct", opt(row.silence_pct())},
      {"single_pct", opt(row.single_pct())},
      {"overlap_pct", opt(row.overlap_pct())},
      {"total_us", row.activity.total.count()},
      {"silence_us", row.activity.silence.count()},
      {"single_us", row.activity.single.count()},
      {"overlap_us", row.activity.overlap.count()},
  };
}

SplitStats stats_from_json(const nlohmann::json& j) {
  SplitStats row;
  row.scenario = j.at("scenario").get<std::string>();
  row.split = j.at("split").get<std::string>();
  row.utterances = j.at("utterances").get<std::int64_t>();
  row.speakers = j.at("speakers").get<std::int64_t>();
  row.sessions = j.at("sessions").get<std::int64_t>();
  row.activity.total = Duration(j.at("total_us").get<std::int64_t>());
  row.activity.silence = Duration(j.at("silence_us").get<std::int64_t>());
  row.activity.single = Duration(j.at("single_us").get<std::int64_t>());
  row.activity.overlap = Duration(j.at("overlap_us").get<std::int64_t>());
  return row;
}

}  // namespace dasr
