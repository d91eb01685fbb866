#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace dasr {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON. `byte_offset` points at the byte where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed JSON that does not follow the segLST schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::string key, std::size_t index)
      : Error(what), key_(std::move(key)), index_(index) {}
  const std::string& key() const noexcept { return key_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::string key_;
  std::size_t index_;
};

/// A field is present but its value cannot be interpreted (e.g. "abc" as a time).
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Directory layout problems (missing scenario/split, duplicate session files).
class LayoutError : public Error {
 public:
  LayoutError(const std::string& what, std::filesystem::path path)
      : Error(what), path_(std::move(path)) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// A caller violated an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An error rate was requested whose denominator is zero.
class UndefinedRateError : public Error {
 public:
  using Error::Error;
};

/// Reference and hypothesis sets cannot be paired for scoring.
class ScoringError : public Error {
 public:
  using Error::Error;
};

}  // namespace dasr
