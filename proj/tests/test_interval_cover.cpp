#include <gtest/gtest.h>

#include <random>
#include <set>

#include "eog/interval_cover.hpp"

using namespace eog;

namespace {

std::int64_t covered_by(const std::vector<Label>& labels, const std::vector<Label>& starts, Label length) {
  std::int64_t n = 0;
  for (Label x : labels) {
    for (Label a : starts) {
      if (a <= x && x <= a + length) {
        ++n;
        break;
      }
    }
  }
  return n;
}

// Best cover over every multiset of `count` starts drawn from `candidates`.
std::int64_t exhaustive_cover(const std::vector<Label>& labels, const std::vector<Label>& candidates, int count,
                              Label length) {
  std::int64_t best = 0;
  std::vector<Label> starts;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, covered_by(labels, starts, length));
    if (static_cast<int>(starts.size()) == count) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      starts.push_back(candidates[i]);
      self(self, i + 1);
      starts.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

std::vector<Label> random_labels(std::mt19937_64& rng, std::size_t max_size, Label range) {
  std::set<Label> s;
  std::size_t size = 1 + rng() % max_size;
  while (s.size() < size) s.insert(1 + static_cast<Label>(rng() % static_cast<std::uint64_t>(range)));
  return {s.begin(), s.end()};
}

}  // namespace

TEST(BestCover, Examples) {
  std::vector<Label> a{1, 2, 3, 100};
  auto r = best_interval_cover(a, 1, 2);
  EXPECT_EQ(r.covered, 3);
  ASSERT_EQ(r.intervals.size(), 1u);
  EXPECT_EQ(r.intervals[0], (Interval{1, 3}));

  std::vector<Label> b{4, 9, 17};
  EXPECT_EQ(best_interval_cover(b, 3, 0).covered, 3);
  EXPECT_EQ(best_interval_cover(b, 5, 1).covered, 3);

  std::vector<Label> c{1, 5, 9};
  EXPECT_EQ(best_interval_cover(c, 2, 0).covered, 2);
  EXPECT_EQ(best_interval_cover({}, 2, 4).covered, 0);
  EXPECT_EQ(best_interval_cover(c, 0, 4).covered, 0);
}

TEST(BestCover, MatchesExhaustiveOverLabelStarts) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 400; ++i) {
    auto labels = random_labels(rng, 12, 40);
    int count = 1 + static_cast<int>(rng() % 3);
    Label length = static_cast<Label>(rng() % 10);
    auto r = best_interval_cover(labels, count, length);
    EXPECT_EQ(r.covered, exhaustive_cover(labels, labels, count, length));
    EXPECT_LE(static_cast<int>(r.intervals.size()), count);
    std::vector<Label> starts;
    for (const Interval& iv : r.intervals) {
      EXPECT_EQ(iv.hi - iv.lo, length);
      starts.push_back(iv.lo);
    }
    EXPECT_EQ(covered_by(labels, starts, length), r.covered);
  }
}

TEST(BestCover, LabelStartsLoseNothing) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 150; ++i) {
    auto labels = random_labels(rng, 8, 20);
    int count = 1 + static_cast<int>(rng() % 2);
    Label length = static_cast<Label>(rng() % 6);
    std::vector<Label> every;
    for (Label a = labels.front() - length; a <= labels.back(); ++a) every.push_back(a);
    EXPECT_EQ(exhaustive_cover(labels, every, count, length), exhaustive_cover(labels, labels, count, length));
  }
}

TEST(WildIntervals, FigureExample) {
  std::vector<Label> s{1, 2, 3, 12, 13, 14, 23, 24, 25};
  auto w = wild_intervals(s, 7, 3);
  ASSERT_EQ(w.count(), 3u);
  EXPECT_EQ(w.starts, (std::vector<Label>{3, 14, 25}));
  EXPECT_EQ(w.intervals[0], (Interval{3, 10}));
  EXPECT_EQ(w.intervals[1], (Interval{14, 21}));
  EXPECT_EQ(w.intervals[2], (Interval{25, 32}));
}

TEST(WildIntervals, OneWindow) {
  std::vector<Label> s{5, 6, 7, 8};
  EXPECT_EQ(wild_intervals(s, 10, 2).count(), 1u);
  EXPECT_EQ(wild_intervals(s, 10, 5).count(), 0u);
}

TEST(WildIntervals, GapsHoldExactlyCMinusOne) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto s = random_labels(rng, 30, 200);
    Label f = static_cast<Label>(rng() % 20);
    std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
    auto w = wild_intervals(s, f, c);
    auto count_in = [&](Label lo, Label hi) {
      return std::count_if(s.begin(), s.end(), [&](Label x) { return lo <= x && x <= hi; });
    };
    for (std::size_t j = 0; j < w.count(); ++j) {
      Label prev_end = j == 0 ? s.front() - 1 : w.intervals[j - 1].hi;
      EXPECT_EQ(count_in(prev_end + 1, w.starts[j] - 1), c - 1);
      EXPECT_TRUE(std::binary_search(s.begin(), s.end(), w.starts[j]));
    }
    Label tail_from = w.count() == 0 ? s.front() : w.intervals.back().hi + 1;
    EXPECT_LT(count_in(tail_from, s.back()), c);
  }
}
