#pragma once

// Word error counting: plain Levenshtein, concatenated minimum-permutation
// WER (cpWER) and its time-constrained variant (tcpWER).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dasr/seglst.hpp"

namespace dasr {

struct AlignmentCounts {
  std::int64_t substitutions = 0;
  std::int64_t insertions = 0;
  std::int64_t deletions = 0;
  std::int64_t correct = 0;

  std::int64_t ref_words() const { return substitutions + deletions + correct; }
  std::int64_t hyp_words() const { return substitutions + insertions + correct; }
  std::int64_t errors() const { return substitutions + insertions + deletions; }
  /// errors / ref_words; throws UndefinedRateError when ref_words == 0.
  double error_rate() const;

  AlignmentCounts& operator+=(const AlignmentCounts& o);
  friend AlignmentCounts operator+(AlignmentCounts a, const AlignmentCounts& b) { return a += b; }
  friend bool operator==(const AlignmentCounts&, const AlignmentCounts&) = default;
};

struct TimedWord {
  std::string token;
  double begin = 0.0;
  double end = 0.0;
  std::string speaker;
};

inline constexpr double kInfiniteCollar = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTcpCollar = 5.0;

/// One pairing of a reference speaker stream with a hypothesis speaker
/// stream. An empty label stands for the padding (empty) stream.
struct StreamPair {
  std::string ref_speaker;
  std::string hyp_speaker;
  AlignmentCounts counts;
};

struct SpeakerAssignment {
  std::vector<StreamPair> pairs;
  AlignmentCounts total_counts;
};

/// Unit-cost edit distance. Backtrace ties prefer correct, substitution,
/// deletion, insertion.
AlignmentCounts levenshtein(std::span<const std::string> ref, std::span<const std::string> hyp);

/// Equal-partition pseudo word timing over the segment interval.
std::vector<TimedWord> words_with_times(const Segment& seg);

/// Same as levenshtein, except that a reference and a hypothesis word may only
/// be paired (match or substitution) when [ref.begin - collar, ref.end + collar]
/// and [hyp.begin, hyp.end] overlap with positive length. Both inputs must be
/// sorted by begin time (ContractError otherwise).
AlignmentCounts tc_levenshtein(std::span<const TimedWord> ref, std::span<const TimedWord> hyp,
                               double collar);

/// Speaker streams used by cp_wer and tcp_wer: a speaker's words in
/// pseudo-word begin-time order, which is segment start order unless the
/// speaker's own segments overlap.
///
/// cpWER for a single session. Throws ContractError for multi-session input
/// and UndefinedRateError for an empty reference.
SpeakerAssignment cp_wer(const SegLst& ref, const SegLst& hyp);

/// tcpWER for a single session (collar in seconds, may be infinite).
SpeakerAssignment tcp_wer(const SegLst& ref, const SegLst& hyp, double collar = kDefaultTcpCollar);

/// Counts under a caller-chosen speaker mapping (ref label -> hyp label).
/// Unmapped speakers on either side are charged against an empty stream.
AlignmentCounts cp_counts_for_mapping(
    const SegLst& ref, const SegLst& hyp,
    const std::vector<std::pair<std::string, std::string>>& mapping);

}  // namespace dasr
