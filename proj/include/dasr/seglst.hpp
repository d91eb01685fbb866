#pragma once

// Segment-wise long-form speech transcription (segLST) data model.
//
// A segLST file is a JSON array of objects carrying at least the keys
// session_id, speaker, start_time, end_time and words. Any other key is kept
// in Segment::extra so that a parse/write cycle does not lose metadata, but
// no metric ever looks at it.

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dasr {

struct Segment {
  std::string session_id;
  std::string speaker;
  double start_time = 0.0;  // seconds
  double end_time = 0.0;    // seconds
  std::string words;
  nlohmann::json extra = nlohmann::json::object();

  double duration() const { return end_time - start_time; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

class SegLst {
 public:
  SegLst() = default;
  explicit SegLst(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }
  auto begin() const noexcept { return segments_.begin(); }
  auto end() const noexcept { return segments_.end(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }

  std::set<std::string> session_ids() const;
  std::set<std::string> speakers() const;

  /// Copy sorted by (session_id, start_time, end_time, speaker, words).
  SegLst sorted() const;

  friend bool operator==(const SegLst&, const SegLst&) = default;

 private:
  std::vector<Segment> segments_;
};

enum class Severity { warning, error };

struct Violation {
  std::size_t index;  // segment index within the SegLst
  Severity severity;
  std::string kind;   // "non-positive duration", "negative start", ...
  std::string message;
};

/// Parses a segLST document. Throws ParseError / SchemaError / ValueError.
SegLst parse_seglst(std::string_view raw);
SegLst read_seglst(const std::filesystem::path& path);

/// Serializes to a pretty-printed JSON array. Times are emitted as numbers
/// with at most six decimals (three for millisecond-precise data).
std::string write_seglst(const SegLst& s);
void write_seglst_file(const SegLst& s, const std::filesystem::path& path);

/// Every invariant violation, in segment order. Empty iff `s` is valid.
/// Duplicate segments are reported at warning level.
std::vector<Violation> validate(const SegLst& s);
bool has_errors(const std::vector<Violation>& violations);

std::map<std::string, SegLst> split_by_session(const SegLst& s);

// ---------------------------------------------------------------------------
// Directory layout
//
//   <root>/<scenario>/transcriptions/<split>/<session_id>.json
//   <root>/<scenario>/transcriptions_scoring/<split>/<session_id>.json

enum class TranscriptionKind { original, scoring };

std::string_view folder_name(TranscriptionKind kind);

struct LayoutManifest {
  std::string scenario;
  std::string split;
  std::map<std::string, std::filesystem::path> session_files;
};

/// Throws LayoutError when the scenario/split directory is missing or two
/// files name the same session.
LayoutManifest scan_layout(const std::filesystem::path& root, const std::string& scenario,
                           const std::string& split,
                           TranscriptionKind kind = TranscriptionKind::original);

/// Scenario directories under `root` that contain the given transcription
/// folder, sorted.
std::vector<std::string> list_scenarios(const std::filesystem::path& root,
                                        TranscriptionKind kind = TranscriptionKind::original);
std::vector<std::string> list_splits(const std::filesystem::path& root, const std::string& scenario,
                                     TranscriptionKind kind = TranscriptionKind::original);

std::string read_file(const std::filesystem::path& path);
/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dasr
