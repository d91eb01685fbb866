#pragma once

// Boundary sweep over labelled integer intervals.

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

namespace dasr::detail {

struct LabeledInterval {
  std::int64_t begin;
  std::int64_t end;
  int label;
};

/// Calls visit(begin, end, active) for every elementary interval between two
/// consecutive distinct boundaries, where `active` lists (ascending) the labels
/// covered by at least one of their intervals. Overlapping intervals of the
/// same label count once.
template <typename Visit>
void sweep(const std::vector<LabeledInterval>& intervals, int num_labels, Visit&& visit) {
  struct Event {
    std::int64_t at;
    int delta;
    int label;
  };
  std::vector<Event> events;
  events.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    if (iv.end <= iv.begin) continue;
    events.push_back({iv.begin, +1, iv.label});
    events.push_back({iv.end, -1, iv.label});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.at, a.delta, a.label) < std::tie(b.at, b.delta, b.label);
  });

  std::vector<int> depth(static_cast<std::size_t>(num_labels), 0);
  std::vector<int> active;
  std::size_t i = 0;
  while (i < events.size()) {
    const std::int64_t at = events[i].at;
    for (; i < events.size() && events[i].at == at; ++i) depth[events[i].label] += events[i].delta;
    if (i == events.size()) break;
    active.clear();
    for (int l = 0; l < num_labels; ++l) {
      if (depth[l] > 0) active.push_back(l);
    }
    visit(at, events[i].at, active);
  }
}

}  // namespace dasr::detail
