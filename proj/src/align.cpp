#include "dasr/align.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "dasr/assignment.hpp"
#include "dasr/error.hpp"

namespace dasr {

namespace {

struct PathCounts {
  std::int64_t cost = 0, sub = 0, ins = 0, del = 0;  // cost == sub + ins + del
};

// Edit distance DP keeping two rows. Each cell stores the counts of the path
// selected by the tie-break rule, which is the path a backtrace from the end
// would follow.
template <typename Same, typename Admissible>
AlignmentCounts edit_counts(std::size_t n, std::size_t m, Same same, Admissible admissible) {
  // two rows, reused across calls on the same thread
  thread_local std::vector<PathCounts> rows;
  if (rows.size() < 2 * (m + 1)) rows.resize(2 * (m + 1));
  PathCounts* prev = rows.data();
  PathCounts* cur = prev + (m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const auto k = static_cast<std::int64_t>(j);
    prev[j] = {k, 0, k, 0};
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const auto k = static_cast<std::int64_t>(i);
    cur[0] = {k, 0, 0, k};
    for (std::size_t j = 1; j <= m; ++j) {
      PathCounts best = prev[j];
      ++best.del;
      ++best.cost;
      if (admissible(i - 1, j - 1)) {
        PathCounts diag = prev[j - 1];
        if (!same(i - 1, j - 1)) {
          ++diag.sub;
          ++diag.cost;
        }
        if (diag.cost <= best.cost) best = diag;
      }
      PathCounts ins = cur[j - 1];
      ++ins.ins;
      ++ins.cost;
      if (ins.cost < best.cost) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const PathCounts& end = prev[m];
  AlignmentCounts out;
  out.substitutions = end.sub;
  out.insertions = end.ins;
  out.deletions = end.del;
  out.correct = static_cast<std::int64_t>(n) - end.sub - end.del;
  return out;
}

// Tokens are short; an inline loop beats a memcmp call here.
bool same_token(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

std::vector<std::string> tokenize(const std::string& words) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < words.size()) {
    while (i < words.size() && std::isspace(static_cast<unsigned char>(words[i]))) ++i;
    const std::size_t b = i;
    while (i < words.size() && !std::isspace(static_cast<unsigned char>(words[i]))) ++i;
    if (i > b) out.push_back(words.substr(b, i - b));
  }
  return out;
}

// Token ids shared by the ref and hyp side of one session.
class Vocabulary {
 public:
  int id(const std::string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

struct TimedId {
  int token;
  double begin;
  double end;
};

struct Stream {
  std::string speaker;
  std::vector<TimedId> words;
};

void require_single_session(const SegLst& ref, const SegLst& hyp) {
  auto ids = ref.session_ids();
  ids.merge(hyp.session_ids());
  if (ids.size() > 1) {
    throw ContractError("expected a single session, got " + std::to_string(ids.size()) +
                        "; split by session first");
  }
}

// Speaker streams sorted by label. Segments of one speaker are concatenated
// in (start, end, words) order and the words then ordered by pseudo-word
// begin time. Both metrics share this order, so a speaker's overlapping
// segments are interleaved the same way for cpWER and tcpWER.
std::vector<Stream> build_streams(const SegLst& s, Vocabulary& vocab) {
  std::map<std::string, std::vector<const Segment*>> by_speaker;
  for (const auto& seg : s) by_speaker[seg.speaker].push_back(&seg);
  std::vector<Stream> out;
  for (auto& [speaker, segs] : by_speaker) {
    std::stable_sort(segs.begin(), segs.end(), [](const Segment* a, const Segment* b) {
      return std::tie(a->start_time, a->end_time, a->words) <
             std::tie(b->start_time, b->end_time, b->words);
    });
    Stream stream{speaker, {}};
    for (const Segment* seg : segs) {
      for (auto& w : words_with_times(*seg)) stream.words.push_back({vocab.id(w.token), w.begin, w.end});
    }
    std::stable_sort(stream.words.begin(), stream.words.end(),
                     [](const TimedId& a, const TimedId& b) { return a.begin < b.begin; });
    out.push_back(std::move(stream));
  }
  return out;
}

AlignmentCounts plain_counts(const std::vector<TimedId>& ref, const std::vector<TimedId>& hyp) {
  return edit_counts(
      ref.size(), hyp.size(), [&](std::size_t i, std::size_t j) { return ref[i].token == hyp[j].token; },
      [](std::size_t, std::size_t) { return true; });
}

bool within_collar(double ref_begin, double ref_end, double hyp_begin, double hyp_end, double collar) {
  return ref_begin - collar < hyp_end && hyp_begin < ref_end + collar;
}

AlignmentCounts timed_counts(const std::vector<TimedId>& ref, const std::vector<TimedId>& hyp,
                             double collar) {
  return edit_counts(
      ref.size(), hyp.size(), [&](std::size_t i, std::size_t j) { return ref[i].token == hyp[j].token; },
      [&](std::size_t i, std::size_t j) {
        return within_collar(ref[i].begin, ref[i].end, hyp[j].begin, hyp[j].end, collar);
      });
}

AlignmentCounts only_deletions(std::size_t n) {
  AlignmentCounts c;
  c.deletions = static_cast<std::int64_t>(n);
  return c;
}

AlignmentCounts only_insertions(std::size_t n) {
  AlignmentCounts c;
  c.insertions = static_cast<std::int64_t>(n);
  return c;
}

template <typename PairCounts>
SpeakerAssignment permutation_wer(const SegLst& ref, const SegLst& hyp,
                                  PairCounts pair_counts) {
  require_single_session(ref, hyp);
  Vocabulary vocab;
  const auto ref_streams = build_streams(ref, vocab);
  const auto hyp_streams = build_streams(hyp, vocab);

  std::size_t ref_total = 0, hyp_total = 0;
  for (const auto& s : ref_streams) ref_total += s.words.size();
  for (const auto& s : hyp_streams) hyp_total += s.words.size();
  if (ref_total == 0) throw UndefinedRateError("reference has no words; error rate undefined");

  const std::size_t r = ref_streams.size(), h = hyp_streams.size(), n = std::max(r, h);
  std::vector<std::vector<AlignmentCounts>> counts(n, std::vector<AlignmentCounts>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < r && j < h) {
        counts[i][j] = pair_counts(ref_streams[i].words, hyp_streams[j].words);
      } else if (i < r) {
        counts[i][j] = only_deletions(ref_streams[i].words.size());
      } else if (j < h) {
        counts[i][j] = only_insertions(hyp_streams[j].words.size());
      }
    }
  }

  // Minimize errors, then substitutions, then insertions, so that the
  // resulting count breakdown does not depend on how speakers are labelled.
  const auto base = static_cast<std::int64_t>(ref_total + hyp_total + 1);
  const bool composite = base <= 2'000'000;
  CostMatrix cost(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = counts[i][j];
      cost[i][j] = composite ? (c.errors() * base + c.substitutions) * base + c.insertions : c.errors();
    }
  }
  const Assignment solved = assign_streams(cost);

  SpeakerAssignment out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = solved.col_for_row[i];
    if (i >= r && j >= h) continue;
    out.pairs.push_back({i < r ? ref_streams[i].speaker : std::string(),
                         j < h ? hyp_streams[j].speaker : std::string(), counts[i][j]});
    out.total_counts += counts[i][j];
  }
  return out;
}

}  // namespace

double AlignmentCounts::error_rate() const {
  if (ref_words() == 0) throw UndefinedRateError("error rate undefined: no reference words");
  return static_cast<double>(errors()) / static_cast<double>(ref_words());
}

AlignmentCounts& AlignmentCounts::operator+=(const AlignmentCounts& o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  correct += o.correct;
  return *this;
}

AlignmentCounts levenshtein(std::span<const std::string> ref, std::span<const std::string> hyp) {
  return edit_counts(
      ref.size(), hyp.size(), [&](std::size_t i, std::size_t j) { return same_token(ref[i], hyp[j]); },
      [](std::size_t, std::size_t) { return true; });
}

std::vector<TimedWord> words_with_times(const Segment& seg) {
  const auto tokens = tokenize(seg.words);
  const std::size_t n = tokens.size();
  const double span = seg.end_time - seg.start_time;
  auto boundary = [&](std::size_t k) {
    if (k == 0) return seg.start_time;
    if (k == n) return seg.end_time;
    return seg.start_time + span * static_cast<double>(k) / static_cast<double>(n);
  };
  std::vector<TimedWord> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back({tokens[k], boundary(k), boundary(k + 1), seg.speaker});
  return out;
}

AlignmentCounts tc_levenshtein(std::span<const TimedWord> ref, std::span<const TimedWord> hyp,
                               double collar) {
  if (!(collar >= 0)) throw ContractError("tc_levenshtein: collar must be >= 0");
  auto sorted = [](std::span<const TimedWord> words) {
    return std::is_sorted(words.begin(), words.end(),
                          [](const TimedWord& a, const TimedWord& b) { return a.begin < b.begin; });
  };
  if (!sorted(ref) || !sorted(hyp)) throw ContractError("tc_levenshtein: words not sorted by begin time");
  return edit_counts(
      ref.size(), hyp.size(), [&](std::size_t i, std::size_t j) { return ref[i].token == hyp[j].token; },
      [&](std::size_t i, std::size_t j) {
        return within_collar(ref[i].begin, ref[i].end, hyp[j].begin, hyp[j].end, collar);
      });
}

SpeakerAssignment cp_wer(const SegLst& ref, const SegLst& hyp) {
  return permutation_wer(ref, hyp, plain_counts);
}

SpeakerAssignment tcp_wer(const SegLst& ref, const SegLst& hyp, double collar) {
  if (!(collar >= 0)) throw ContractError("tcp_wer: collar must be >= 0");
  return permutation_wer(ref, hyp, [collar](const auto& r, const auto& h) {
    return timed_counts(r, h, collar);
  });
}

AlignmentCounts cp_counts_for_mapping(const SegLst& ref, const SegLst& hyp,
                                      const std::vector<std::pair<std::string, std::string>>& mapping) {
  require_single_session(ref, hyp);
  Vocabulary vocab;
  std::map<std::string, std::vector<TimedId>> ref_streams, hyp_streams;
  for (auto& s : build_streams(ref, vocab)) ref_streams[s.speaker] = std::move(s.words);
  for (auto& s : build_streams(hyp, vocab)) hyp_streams[s.speaker] = std::move(s.words);

  std::set<std::string> used_ref, used_hyp;
  AlignmentCounts total;
  const std::vector<TimedId> empty;
  for (const auto& [r, h] : mapping) {
    if (!used_ref.insert(r).second || !used_hyp.insert(h).second) {
      throw ContractError("speaker mapping is not one-to-one");
    }
    const auto ri = ref_streams.find(r);
    const auto hi = hyp_streams.find(h);
    total += plain_counts(ri == ref_streams.end() ? empty : ri->second,
                          hi == hyp_streams.end() ? empty : hi->second);
  }
  for (const auto& [r, words] : ref_streams) {
    if (!used_ref.count(r)) total += only_deletions(words.size());
  }
  for (const auto& [h, words] : hyp_streams) {
    if (!used_hyp.count(h)) total += only_insertions(words.size());
  }
  return total;
}

}  // namespace dasr
