#include <algorithm>
#include <cctype>

#include "dasr/error.hpp"
#include "dasr/seglst.hpp"

namespace fs = std::filesystem;

namespace dasr {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> sorted_subdirs(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view folder_name(TranscriptionKind kind) {
  return kind == TranscriptionKind::original ? "transcriptions" : "transcriptions_scoring";
}

LayoutManifest scan_layout(const fs::path& root, const std::string& scenario,
                           const std::string& split, TranscriptionKind kind) {
  const fs::path dir = root / scenario / folder_name(kind) / split;
  if (!fs::is_directory(dir)) throw LayoutError("missing directory: " + dir.string(), dir);

  LayoutManifest manifest{scenario, split, {}};
  std::map<std::string, fs::path> by_folded_name;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& path = entry.path();
    if (lower(path.extension().string()) != ".json") continue;
    const std::string session = path.stem().string();
    auto [it, inserted] = by_folded_name.emplace(lower(session), path);
    if (!inserted) {
      throw LayoutError("duplicate session files: " + it->second.string() + " and " + path.string(),
                        path);
    }
    manifest.session_files.emplace(session, path);
  }
  return manifest;
}

std::vector<std::string> list_scenarios(const fs::path& root, TranscriptionKind kind) {
  if (!fs::is_directory(root)) throw LayoutError("missing directory: " + root.string(), root);
  std::vector<std::string> out;
  for (auto& name : sorted_subdirs(root)) {
    if (fs::is_directory(root / name / folder_name(kind))) out.push_back(std::move(name));
  }
  return out;
}

std::vector<std::string> list_splits(const fs::path& root, const std::string& scenario,
                                     TranscriptionKind kind) {
  const fs::path dir = root / scenario / folder_name(kind);
  if (!fs::is_directory(dir)) throw LayoutError("missing directory: " + dir.string(), dir);
  return sorted_subdirs(dir);
}

}  // namespace dasr
