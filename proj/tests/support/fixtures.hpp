#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>

#include "dasr/seglst.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return DASR_TEST_DATA; }
inline std::filesystem::path minicorpus() { return data_dir() / "minicorpus"; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("dasr_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline dasr::Segment seg(std::string session, std::string speaker, double start, double end,
                         std::string words) {
  return {std::move(session), std::move(speaker), start, end, std::move(words), nlohmann::json::object()};
}

inline void copy_tree(const std::filesystem::path& from, const std::filesystem::path& to) {
  std::filesystem::create_directories(to);
  std::filesystem::copy(from, to, std::filesystem::copy_options::recursive);
}

}  // namespace fixtures
