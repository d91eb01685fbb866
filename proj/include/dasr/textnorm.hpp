#pragma once

// Scoring text normalization.
//
// normalize_text applies, in this order:
//   1. removal of bracketed non-verbal tags ("[laughs]", "<noise>", ...)
//   2. lowercasing (with Latin diacritics folded to ASCII)
//   3. punctuation to whitespace, keeping apostrophes and hyphens between
//      letters, '.'/',' between digits and currency symbols as own tokens
//   4. abbreviation / contraction expansion ("mr" -> "mister")
//   5. deletion of non-verbal tokens ("uhm", "ah", ...)
//   6. number expansion ("20$" -> "twenty dollars")
//   7. whitespace collapse and trim
//
// The result only contains [a-z'-] tokens separated by single spaces and the
// function is idempotent.

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "dasr/seglst.hpp"

namespace dasr {

struct NormConfig {
  std::string version;
  std::map<std::string, std::string> abbreviations;
  std::set<std::string> nonverbal_tokens;
  std::set<std::string> nonverbal_tags;
  std::map<std::string, std::string> currency_words;

  friend bool operator==(const NormConfig&, const NormConfig&) = default;
};

/// The pinned table compiled from data/normalization.tsv.
const NormConfig& default_norm_config();

/// Parses the tab-separated rule file format. Throws ValueError on a
/// malformed line or a table that would break idempotence.
NormConfig parse_norm_config(std::string_view text);
NormConfig load_norm_config(const std::filesystem::path& path);
std::string write_norm_config(const NormConfig& cfg);

/// Stable 64-bit fingerprint of the canonical rule table, as 16 hex digits.
std::string norm_fingerprint(const NormConfig& cfg);

/// English cardinal words for 0..999'999 ("one hundred twenty three").
std::string cardinal_words(std::uint32_t n);
/// English ordinal words for 1..100 ("twenty first").
std::string ordinal_words(std::uint32_t n);

std::string expand_numbers(std::string_view text, const NormConfig& cfg);
std::string normalize_text(std::string_view text, const NormConfig& cfg);

struct NormalizedSegLst {
  SegLst segments;
  std::size_t dropped = 0;
};

/// Normalizes every transcript and drops segments that become empty.
/// Times, labels and order of the surviving segments are untouched.
NormalizedSegLst normalize_seglst_counted(const SegLst& s, const NormConfig& cfg);
SegLst normalize_seglst(const SegLst& s, const NormConfig& cfg);

}  // namespace dasr
