#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace eog;
using namespace eog::testing;

namespace {

// Close by definition: the sorted ranks at v form a run of consecutive integers.
bool close_by_definition(const EdgeOrderedGraph& h, Vertex v) {
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (h.edge(i).u == v || h.edge(i).v == v) ranks.push_back(i);
  }
  return ranks.empty() || ranks.back() - ranks.front() + 1 == ranks.size();
}

struct BruteForce {
  bool exists = false;
  int min_k = 0;
};

// Tries every choice of close side per component (2^components colorings).
BruteForce brute_force_witness(const EdgeOrderedGraph& h) {
  const int n = h.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  int count = 0;
  for (Vertex r = 0; r < n; ++r) {
    if (comp[r] != -1) continue;
    std::vector<Vertex> stack{r};
    comp[r] = count;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const Incidence& inc : h.incident(x)) {
        if (comp[inc.neighbor] == -1) {
          comp[inc.neighbor] = count;
          color[inc.neighbor] = 1 - color[x];
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++count;
  }
  BruteForce out;
  out.min_k = n + 1;
  for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
    bool ok = true;
    int k = 0;
    for (Vertex v = 0; v < n && ok; ++v) {
      bool left = h.degree(v) == 0 || color[v] == static_cast<int>((mask >> comp[v]) & 1u);
      if (!left) continue;
      ++k;
      ok = close_by_definition(h, v);
    }
    if (ok) {
      out.exists = true;
      out.min_k = std::min(out.min_k, k);
    }
  }
  return out;
}

}  // namespace

TEST(CloseVertices, Examples) {
  EXPECT_EQ(close_vertices(parse_path_notation("P5^1342")), (std::vector<Vertex>{0, 2, 4}));
  EXPECT_EQ(close_vertices(parse_path_notation("P5^3142")), (std::vector<Vertex>{0, 4}));
  EXPECT_EQ(close_vertices(star(4)), (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(close_vertices(EdgeOrderedGraph(3, {{0, 1, 1}})), (std::vector<Vertex>{0, 1, 2}));
}

TEST(CloseVertices, MatchesDefinition) {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    auto h = random_graph(6, 0.5, rng);
    auto close = close_vertices(h);
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
      EXPECT_EQ(std::binary_search(close.begin(), close.end(), v), close_by_definition(h, v));
    }
  }
}

TEST(Witness, PathFive) {
  auto w = ocn2_witness(parse_path_notation("P5^1342"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->close_side, (std::vector<Vertex>{0, 2, 4}));
  EXPECT_EQ(w->other_side, (std::vector<Vertex>{1, 3}));
  EXPECT_EQ(w->left_order, (std::vector<Vertex>{0, 4, 2}));
  EXPECT_TRUE(check_witness(parse_path_notation("P5^1342"), *w));
}

TEST(Witness, Absent) {
  EXPECT_FALSE(ocn2_witness(parse_path_notation("P5^3142")));
}

TEST(Witness, Errors) {
  EXPECT_THROW(ocn2_witness(EdgeOrderedGraph(3, {})), PatternError);
  EXPECT_THROW(ocn2_witness(EdgeOrderedGraph(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}})), PatternError);
  EXPECT_THROW(certify(parse_path_notation("P5^3142")), PatternError);
}

TEST(Certify, Examples) {
  auto p5 = certify(parse_path_notation("P5^1342"));
  EXPECT_EQ(p5.k, 3);
  EXPECT_EQ(p5.ell, 5);
  EXPECT_FALSE(p5.is_star);
  EXPECT_EQ(p5.left_index, (std::vector<int>{0, -1, 2, -1, 1}));

  auto s = certify(star(4));
  EXPECT_EQ(s.k, 1);
  EXPECT_EQ(s.ell, 5);
  EXPECT_TRUE(s.is_star);
  EXPECT_EQ(s.witness.close_side, (std::vector<Vertex>{0}));

  auto edge = certify(EdgeOrderedGraph(2, {{0, 1, 1}}));
  EXPECT_EQ(edge.k, 1);
  EXPECT_TRUE(edge.is_star);

  // Both sides of P3 are all-close; the smaller side (the middle vertex) is kept.
  auto p3 = certify(parse_path_notation("P3^12"));
  EXPECT_EQ(p3.k, 1);
  EXPECT_EQ(p3.witness.close_side, (std::vector<Vertex>{1}));
  EXPECT_TRUE(p3.is_star);
}

TEST(Certify, IsolatedVerticesGoLast) {
  auto h = EdgeOrderedGraph(6, {{1, 2, 1}, {2, 3, 3}, {3, 4, 2}});
  auto w = ocn2_witness(h);
  ASSERT_TRUE(w);
  EXPECT_TRUE(check_witness(h, *w));
  EXPECT_EQ(w->left_order.back(), 5);
  EXPECT_EQ(w->left_order[w->left_order.size() - 2], 0);
}

TEST(Witness, TieBreakLowestId) {
  // Every vertex of P4^123 is close; the sides {0,2} and {1,3} tie on size.
  auto h = parse_path_notation("P4^123");
  auto w = ocn2_witness(h);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->close_side, (std::vector<Vertex>{0, 2}));
}

TEST(Witness, AgreesWithBruteForceOnAllSmallForests) {
  Rng rng(2);
  for (int n = 2; n <= 7; ++n) {
    for (const auto& pairs : all_forests(n)) {
      for (int rep = 0; rep < 20; ++rep) {
        auto h = with_random_labels(n, pairs, rng);
        auto w = ocn2_witness(h);
        auto brute = brute_force_witness(h);
        ASSERT_EQ(w.has_value(), brute.exists) << serialize(h);
        if (!w) continue;
        EXPECT_TRUE(check_witness(h, *w)) << serialize(h);
        EXPECT_EQ(static_cast<int>(w->close_side.size()), brute.min_k) << serialize(h);
      }
    }
  }
}

TEST(Witness, ForestCountsPerVertexCount) {
  // forests with at least one edge: unlabeled forests minus the empty graph
  std::vector<std::size_t> expected{0, 1, 2, 5, 9, 19, 36};
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(all_forests(n).size(), expected[static_cast<std::size_t>(n - 1)]) << n;
}

TEST(Witness, CheckRejectsBrokenWitness) {
  auto h = parse_path_notation("P5^1342");
  auto w = *ocn2_witness(h);
  auto swapped = w;
  std::swap(swapped.left_order[0], swapped.left_order[1]);
  EXPECT_FALSE(check_witness(h, swapped));
  auto wrong_side = w;
  std::swap(wrong_side.close_side, wrong_side.other_side);
  wrong_side.left_order = wrong_side.close_side;
  EXPECT_FALSE(check_witness(h, wrong_side));
}
