#include "dasr/seglst.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <tuple>

#include "dasr/error.hpp"

namespace dasr {

namespace {

constexpr std::array<std::string_view, 5> kMandatoryKeys = {"session_id", "speaker", "start_time",
                                                            "end_time", "words"};

bool is_mandatory(const std::string& key) {
  return std::find(kMandatoryKeys.begin(), kMandatoryKeys.end(), key) != kMandatoryKeys.end();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_time(const nlohmann::json& value, const std::string& key, std::size_t index) {
  double t = 0.0;
  if (value.is_number()) {
    t = value.get<double>();
  } else if (value.is_string()) {
    const std::string text = trim(value.get_ref<const std::string&>());
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, t);
    if (text.empty() || ec != std::errc() || ptr != last) {
      throw ValueError("segment " + std::to_string(index) + ": " + key + " is not numeric: \"" +
                       value.get<std::string>() + "\"");
    }
  } else {
    throw ValueError("segment " + std::to_string(index) + ": " + key +
                     " must be a number or numeric string");
  }
  if (!std::isfinite(t)) {
    throw ValueError("segment " + std::to_string(index) + ": " + key + " is not finite");
  }
  return t;
}

const std::string& require_string(const nlohmann::json& obj, const std::string& key,
                                  std::size_t index) {
  const auto& value = obj.at(key);
  if (!value.is_string()) {
    throw SchemaError("segment " + std::to_string(index) + ": key \"" + key + "\" must be a string",
                      key, index);
  }
  return value.get_ref<const std::string&>();
}

// Shortest number that survives a round trip at microsecond precision.
double quantize_time(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return std::strtod(buf, nullptr);
}

auto segment_key(const Segment& s) {
  return std::tie(s.session_id, s.start_time, s.end_time, s.speaker, s.words);
}

}  // namespace

std::set<std::string> SegLst::session_ids() const {
  std::set<std::string> ids;
  for (const auto& s : segments_) ids.insert(s.session_id);
  return ids;
}

std::set<std::string> SegLst::speakers() const {
  std::set<std::string> spk;
  for (const auto& s : segments_) spk.insert(s.speaker);
  return spk;
}

SegLst SegLst::sorted() const {
  auto copy = segments_;
  std::stable_sort(copy.begin(), copy.end(),
                   [](const Segment& a, const Segment& b) { return segment_key(a) < segment_key(b); });
  return SegLst(std::move(copy));
}

SegLst parse_seglst(std::string_view raw) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw.begin(), raw.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                         e.what(),
                     e.byte);
  }
  if (!doc.is_array()) throw SchemaError("top-level value must be a JSON array", "", 0);

  std::vector<Segment> segments;
  segments.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    if (!obj.is_object()) {
      throw SchemaError("segment " + std::to_string(i) + " is not a JSON object", "", i);
    }
    for (auto key : kMandatoryKeys) {
      if (!obj.contains(key)) {
        throw SchemaError("segment " + std::to_string(i) + ": missing key \"" + std::string(key) +
                              "\"",
                          std::string(key), i);
      }
    }
    Segment seg;
    seg.session_id = require_string(obj, "session_id", i);
    seg.speaker = require_string(obj, "speaker", i);
    seg.words = require_string(obj, "words", i);
    seg.start_time = parse_time(obj.at("start_time"), "start_time", i);
    seg.end_time = parse_time(obj.at("end_time"), "end_time", i);
    for (const auto& [key, value] : obj.items()) {
      if (!is_mandatory(key)) seg.extra[key] = value;
    }
    segments.push_back(std::move(seg));
  }
  return SegLst(std::move(segments));
}

SegLst read_seglst(const std::filesystem::path& path) { return parse_seglst(read_file(path)); }

std::string write_seglst(const SegLst& s) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& seg : s) {
    nlohmann::ordered_json obj;
    obj["session_id"] = seg.session_id;
    obj["speaker"] = seg.speaker;
    obj["start_time"] = quantize_time(seg.start_time);
    obj["end_time"] = quantize_time(seg.end_time);
    obj["words"] = seg.words;
    for (const auto& [key, value] : seg.extra.items()) obj[key] = value;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void write_seglst_file(const SegLst& s, const std::filesystem::path& path) {
  write_file(path, write_seglst(s));
}

std::vector<Violation> validate(const SegLst& s) {
  std::vector<Violation> out;
  auto add = [&](std::size_t i, Severity sev, std::string kind, std::string msg) {
    out.push_back({i, sev, std::move(kind), std::move(msg)});
  };
  std::set<std::tuple<std::string, std::string, double, double, std::string>> seen;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& seg = s[i];
    if (!std::isfinite(seg.start_time) || !std::isfinite(seg.end_time)) {
      add(i, Severity::error, "non-finite time", "start_time/end_time must be finite");
    } else {
      if (seg.start_time < 0) {
        add(i, Severity::error, "negative start",
            "start_time " + std::to_string(seg.start_time) + " < 0");
      }
      if (seg.end_time <= seg.start_time) {
        add(i, Severity::error, "non-positive duration",
            "end_time " + std::to_string(seg.end_time) + " <= start_time " +
                std::to_string(seg.start_time));
      }
    }
    if (seg.session_id.empty()) add(i, Severity::error, "empty session", "session_id is empty");
    if (seg.speaker.empty()) add(i, Severity::error, "empty speaker", "speaker is empty");
    if (seg.words.find_first_not_of(" \t\r\n") == std::string::npos) {
      add(i, Severity::error, "empty transcript", "words is empty");
    }
    auto key = std::make_tuple(seg.session_id, seg.speaker, seg.start_time, seg.end_time, seg.words);
    if (!seen.insert(std::move(key)).second) {
      add(i, Severity::warning, "duplicate segment", "identical to an earlier segment");
    }
  }
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

std::map<std::string, SegLst> split_by_session(const SegLst& s) {
  std::map<std::string, std::vector<Segment>> parts;
  for (const auto& seg : s) parts[seg.session_id].push_back(seg);
  std::map<std::string, SegLst> out;
  for (auto& [id, segs] : parts) out.emplace(id, SegLst(std::move(segs)));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace dasr
