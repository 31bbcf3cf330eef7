#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

inline Label saturating_add(Label a, Label b) { return a > INT64_MAX - b ? INT64_MAX : a + b; }

/// Closed integer interval [lo, hi].
struct Interval {
  Label lo = 0;
  Label hi = 0;

  bool contains(Label x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct CoverResult {
  std::int64_t covered = 0;
  std::vector<Interval> intervals;  // at most `count`, sorted, each [a, a + length]
};

/// Maximum number of the (sorted) labels coverable by `count` intervals of the
/// form [a, a + length].
///
/// Some optimal family starts every interval at a label and covers disjoint
/// runs of the sorted list, so a DP over (position, intervals left) suffices:
/// either skip labels[i] or open an interval at it. O(|labels| * count).
inline CoverResult best_interval_cover(std::span<const Label> labels, int count, Label length) {
  CoverResult out;
  const std::size_t n = labels.size();
  if (n == 0 || count <= 0) return out;
  const std::size_t c = static_cast<std::size_t>(std::min<std::int64_t>(count, static_cast<std::int64_t>(n)));
  std::vector<std::size_t> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    Label end = saturating_add(labels[i], length);
    next[i] = static_cast<std::size_t>(std::upper_bound(labels.begin(), labels.end(), end) - labels.begin());
  }
  // best[i][r]: labels covered among labels[i..] with r intervals
  std::vector<std::int64_t> best((n + 1) * (c + 1), 0);
  auto at = [&](std::size_t i, std::size_t r) -> std::int64_t& { return best[i * (c + 1) + r]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t r = 1; r <= c; ++r) {
      at(i, r) = std::max(at(i + 1, r), static_cast<std::int64_t>(next[i] - i) + at(next[i], r - 1));
    }
  }
  out.covered = at(0, c);
  std::size_t i = 0;
  std::size_t r = c;
  while (i < n && r > 0) {
    if (at(i, r) == at(i + 1, r)) {
      ++i;
      continue;
    }
    out.intervals.push_back({labels[i], saturating_add(labels[i], length)});
    i = next[i];
    --r;
  }
  return out;
}

struct WildIntervals {
  std::vector<Interval> intervals;  // I_1 .. I_{i*}
  std::vector<Label> starts;        // a_1 .. a_{i*}
  std::size_t count() const { return intervals.size(); }
};

/// The greedy sequence: a_1 is the c-th smallest label, I_1 = [a_1, a_1 + f];
/// each next a_i is the c-th smallest label above I_{i-1}. Stops once fewer
/// than c labels remain above the last interval.
inline WildIntervals wild_intervals(std::span<const Label> labels, Label f, std::int64_t c) {
  WildIntervals out;
  if (c < 1) return out;
  std::size_t from = 0;  // first label above the previous interval
  while (labels.size() - from >= static_cast<std::size_t>(c)) {
    Label a = labels[from + static_cast<std::size_t>(c) - 1];
    Label end = saturating_add(a, f);
    out.starts.push_back(a);
    out.intervals.push_back({a, end});
    from = static_cast<std::size_t>(std::upper_bound(labels.begin(), labels.end(), end) - labels.begin());
  }
  return out;
}

}  // namespace eog
