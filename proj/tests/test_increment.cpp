#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"

using namespace eog;
using namespace eog::testing;

namespace {

// Mean of W(v) over every grid, as an exact rational.
Rational exact_mean_weight(const EdgeOrderedGraph& g, Vertex v, int k) {
  BigInt sum = 0;
  std::uint64_t grids = 0;
  for_each_grid(static_cast<Label>(g.edge_count()), k, [&](const Grid& t) {
    std::vector<int> per(static_cast<std::size_t>(k), 0);
    for (const Incidence& inc : g.incident(v)) ++per[static_cast<std::size_t>(t.class_of(inc.label) - 1)];
    sum += *std::min_element(per.begin(), per.end());
    ++grids;
    return true;
  });
  return Rational(sum) / grids;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

TEST(ComputeF, Examples) {
  EXPECT_EQ(compute_f(2, 4, Rational(8), 100), BigInt(53600));
  EXPECT_EQ(compute_f(3, 4, Rational(134 * 3 * 16), 50), BigInt(50));
  EXPECT_EQ(compute_f(2, 2, Rational(1072), 1000), BigInt(1000));
}

TEST(ComputeF, Errors) {
  EXPECT_THROW(compute_f(1, 4, Rational(2), 10), std::invalid_argument);
  EXPECT_THROW(compute_f(2, 4, Rational(0), 10), std::invalid_argument);
  EXPECT_THROW(compute_f(2, 4, Rational(-1), 10), std::invalid_argument);
}

TEST(ComputeF, AgreesWithFloatingPointAwayFromIntegers) {
  std::mt19937_64 rng(1);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    int k = 2 + static_cast<int>(rng() % 4);
    int ell = 2 + static_cast<int>(rng() % 6);
    Rational d(1 + static_cast<std::int64_t>(rng() % 5000), 1 + static_cast<std::int64_t>(rng() % 7));
    Label m = 1 + static_cast<Label>(rng() % 10000);
    long double x = std::pow(134.0L * k * ell * ell / static_cast<long double>(d.convert_to<double>()),
                             1.0L / (k - 1)) * m;
    if (std::abs(x - std::round(x)) < 1e-6L) continue;
    ++compared;
    EXPECT_EQ(compute_f(k, ell, d, m), BigInt(static_cast<long long>(std::floor(x))));
  }
  EXPECT_GT(compared, 1900);
}

TEST(ExpectedWeightBound, Values) {
  const Label m = 40;
  // k = 2, f = m - 1: d m / (20 (m - 1))
  EXPECT_EQ(expected_weight_lower_bound(12, BigInt(m - 1), 2, m), Rational(12 * m, 20 * (m - 1)));
  EXPECT_GE(expected_weight_lower_bound(12, BigInt(m - 1), 2, m), Rational(12, 20));
  EXPECT_EQ(expected_weight_lower_bound(0, BigInt(5), 3, m), Rational(0));
  EXPECT_THROW(expected_weight_lower_bound(3, BigInt(5), 1, m), std::invalid_argument);
  EXPECT_THROW(expected_weight_lower_bound(3, BigInt(5), 4, 3), std::invalid_argument);
}

TEST(TameWild, LowDegreeAndWideWindowAreTame) {
  Rng rng(2);
  auto f = certify(parse_path_notation("P5^1342"));
  for (int i = 0; i < 50; ++i) {
    auto g = normalize_labels(random_graph(10, 0.5, rng));
    if (g.edge_count() < 3) continue;
    auto wide = tame_wild(g, make_step_params(g, f, BigInt(g.edge_count())));
    EXPECT_EQ(wide.wild_count, 0);
    auto narrow = tame_wild(g, make_step_params(g, f, BigInt(1)));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) <= f.k - 1) {
        EXPECT_TRUE(narrow.vertices[v].tame);
      }
    }
  }
}

TEST(TameWild, WildVerticesHaveManyGreedyIntervals) {
  Rng rng(3);
  int wild = 0;
  for (int i = 0; i < 200; ++i) {
    auto h = random_forbidden_forest(2, 4, 7, rng);
    auto g = normalize_labels(random_graph(12, 0.6, rng));
    if (static_cast<int>(g.edge_count()) < h.k) continue;
    auto params = make_step_params(g, h, BigInt(static_cast<std::int64_t>(rng() % 6)));
    auto report = tame_wild(g, params);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto& vc = report.vertices[v];
      EXPECT_EQ(vc.tame, 10 * vc.covered >= 9 * vc.degree);
      if (vc.tame) continue;
      ++wild;
      auto labels = incident_labels(g, v);
      auto w = wild_intervals(labels, params.window, ceil_div(vc.degree, 10 * h.k));
      EXPECT_GE(static_cast<int>(w.count()), h.k);
    }
  }
  EXPECT_GT(wild, 50);
}

TEST(GStar, WideWindowKeepsEverything) {
  Rng rng(4);
  auto h = certify(parse_path_notation("P5^1342"));
  auto g = normalize_labels(random_graph(9, 0.5, rng));
  auto params = make_step_params(g, h);
  ASSERT_GE(params.f, BigInt(params.m));
  auto gs = build_gstar(g, tame_wild(g, params));
  EXPECT_EQ(gs.graph, g);
}

TEST(GStar, DefinitionAndBlameAccounting) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto h = random_forbidden_forest(2, 3, 6, rng);
    auto g = normalize_labels(random_graph(12, 0.5, rng));
    if (static_cast<int>(g.edge_count()) < h.k) continue;
    auto params = make_step_params(g, h, BigInt(static_cast<std::int64_t>(rng() % 8)));
    auto report = tame_wild(g, params);
    auto gs = build_gstar(g, report);
    std::int64_t wild_degree = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!report.vertices[v].tame) wild_degree += g.degree(v);
    }
    std::size_t expected = 0;
    for (const Edge& e : g.edges()) {
      auto ok = [&](Vertex v) {
        const auto& vc = report.vertices[v];
        return vc.tame && std::any_of(vc.intervals.begin(), vc.intervals.end(),
                                      [&](const Interval& iv) { return iv.contains(e.label); });
      };
      bool in = ok(e.u) && ok(e.v);
      expected += in;
      EXPECT_EQ(gs.graph.has_edge(e.u, e.v), in);
    }
    EXPECT_EQ(gs.graph.edge_count(), expected);
    const auto m = static_cast<std::int64_t>(g.edge_count());
    const auto excluded = m - static_cast<std::int64_t>(gs.graph.edge_count());
    EXPECT_LE(10 * excluded, 2 * m + 10 * wild_degree);
  }
}

TEST(Slices, Windows) {
  std::vector<Edge> edges;
  for (int i = 0; i < 30; ++i) edges.push_back({i, i + 1, i + 1});
  EdgeOrderedGraph g(31, edges);
  auto slices = partition_slices(g, 10, 30);
  ASSERT_EQ(slices.size(), 3u);
  for (const auto& s : slices) {
    EXPECT_EQ(s.edges.size(), 10u);
    EXPECT_EQ(s.vertex_count, 11);
    EXPECT_EQ(s.average_degree, Rational(20, 11));
  }
  EXPECT_EQ(partition_slices(g, 7, 30).size(), 5u);
  EXPECT_THROW(partition_slices(g, 0, 30), std::invalid_argument);
}

TEST(Slices, Bookkeeping) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    auto h = random_forbidden_forest(2, 4, 7, rng);
    auto g = normalize_labels(random_graph(14, 0.5, rng));
    const auto m = static_cast<Label>(g.edge_count());
    if (m < h.k) continue;
    auto params = make_step_params(g, h, BigInt(1 + static_cast<std::int64_t>(rng() % 9)));
    auto gs = build_gstar(g, tame_wild(g, params));
    auto slices = partition_slices(gs.graph, params.window, m);
    EXPECT_EQ(static_cast<Label>(slices.size()), (m + params.window - 1) / params.window);
    std::size_t edge_sum = 0;
    std::int64_t vertex_sum = 0;
    std::vector<int> appearances(static_cast<std::size_t>(g.vertex_count()), 0);
    Rational best = 0;
    for (const auto& s : slices) {
      EXPECT_LE(static_cast<Label>(s.edges.size()), params.window);
      edge_sum += s.edges.size();
      vertex_sum += s.vertex_count;
      std::set<Vertex> seen;
      for (std::size_t e : s.edges) {
        seen.insert(gs.graph.edge(e).u);
        seen.insert(gs.graph.edge(e).v);
      }
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), s.vertex_count);
      for (Vertex v : seen) ++appearances[v];
      best = std::max(best, s.average_degree);
    }
    for (int a : appearances) EXPECT_LE(a, 2 * h.k - 2);
    EXPECT_EQ(edge_sum, gs.graph.edge_count());
    EXPECT_LE(vertex_sum, static_cast<std::int64_t>(2 * h.k - 2) * g.vertex_count());
    EXPECT_GE(best, Rational(static_cast<std::int64_t>(gs.graph.edge_count())) / ((h.k - 1) * g.vertex_count()));
  }
}

TEST(VertexWeight, ExactExpectationForWildVertices) {
  Rng rng(7);
  int wild = 0;
  for (int i = 0; i < 300; ++i) {
    auto h = random_forbidden_forest(2, 3, 6, rng);
    auto g = normalize_labels(random_graph_m(7, 6 + static_cast<int>(rng() % 7), rng));
    const auto m = static_cast<Label>(g.edge_count());
    if (m < h.k) continue;
    const BigInt f = static_cast<std::int64_t>(rng() % 4);
    auto params = make_step_params(g, h, f);
    auto report = tame_wild(g, params);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (report.vertices[v].tame) continue;
      ++wild;
      EXPECT_GE(exact_mean_weight(g, v, h.k), expected_weight_lower_bound(g.degree(v), f, h.k, m));
    }
  }
  EXPECT_GT(wild, 30);
}

TEST(GStar, AvoidingHostsKeepHalfTheEdges) {
  Rng rng(8);
  int hosts = 0;
  for (int i = 0; i < 600 && hosts < 60; ++i) {
    auto h = random_forbidden_forest(2, 3, 6, rng);
    auto g = random_graph_m(9, 3 + static_cast<int>(rng() % 12), rng);
    if (static_cast<int>(g.edge_count()) < h.k || contains(g, h.graph)) continue;
    ++hosts;
    auto n = normalize_labels(g);
    auto gs = build_gstar(n, tame_wild(n, make_step_params(n, h)));
    EXPECT_GE(2 * gs.graph.edge_count(), n.edge_count());
  }
  EXPECT_GE(hosts, 40);
}

TEST(Step, HostReturnedBelowK) {
  auto h = certify(parse_path_notation("P5^1342"));
  auto g = EdgeOrderedGraph(4, {{0, 1, 5}, {2, 3, 8}});
  auto out = increment_step(g, h);
  EXPECT_EQ(out.kind, OutcomeKind::host_returned);
  EXPECT_EQ(out.subgraph, g);
}

TEST(Step, Preconditions) {
  auto star3 = certify(star(3));
  auto p5 = certify(parse_path_notation("P5^1342"));
  EXPECT_THROW(increment_step(parse("2 1\n0 1 1"), star3), std::invalid_argument);
  EXPECT_THROW(increment_step(EdgeOrderedGraph(3, {}), p5), std::invalid_argument);
}

TEST(Step, AvoidingHostsGiveDenseSlices) {
  Rng rng(9);
  int hosts = 0;
  for (int i = 0; i < 800 && hosts < 80; ++i) {
    auto h = random_forbidden_forest(2, 3, 6, rng);
    auto g = random_graph_m(10, 3 + static_cast<int>(rng() % 12), rng);
    if (static_cast<int>(g.edge_count()) < h.k || contains(g, h.graph)) continue;
    ++hosts;
    auto out = increment_step(g, h);
    ASSERT_EQ(out.kind, OutcomeKind::dense_subgraph);
    EXPECT_LE(BigInt(out.subgraph.edge_count()), out.audit.params.f);
    EXPECT_GE(out.average_degree, g.average_degree() / (4 * h.k - 4));
    EXPECT_EQ(out.average_degree, out.subgraph.average_degree());
    for (const Edge& e : out.subgraph.edges()) {
      EXPECT_TRUE(g.has_edge(out.vertex_map[e.u], out.vertex_map[e.v]));
    }
  }
  EXPECT_GE(hosts, 60);
}

TEST(Step, CompleteHost) {
  Rng rng(10);
  auto h = certify(parse_path_notation("P5^1342"));
  auto g = complete_graph(12, rng);
  ASSERT_TRUE(contains(g, h.graph));
  auto out = increment_step(g, h);
  ASSERT_TRUE(out.kind == OutcomeKind::dense_subgraph || out.kind == OutcomeKind::found_embedding);
  if (out.embedding) {
    EXPECT_TRUE(verify_embedding(g, h.graph, *out.embedding));
  }
}

TEST(Step, HeavyGridBranchFindsEmbedding) {
  Rng rng(11);
  auto h = certify(parse_path_notation("P4^132"));
  ASSERT_EQ(h.k, 2);
  auto host = balanced_bipartite_host(2 * 2 * 4 * 4, 2, rng);
  StepOptions options;
  options.f_override = BigInt(1);
  auto out = increment_step(host.graph, h, options);
  ASSERT_EQ(out.kind, OutcomeKind::found_embedding) << out.diagnostic;
  EXPECT_TRUE(verify_embedding(host.graph, h.graph, *out.embedding));
  ASSERT_TRUE(out.audit.grid_search);
  EXPECT_EQ(out.audit.grid_search->strategy, "sweep");
  EXPECT_GE(out.audit.grid_search->best_weight, out.audit.grid_search->threshold);
  EXPECT_LT(2 * out.audit.gstar_edges, static_cast<std::int64_t>(host.graph.edge_count()));
}

TEST(Step, HeavyGridBranchSampledAndExhaustive) {
  Rng rng(12);
  auto h = certify(parse_path_notation("P5^1342"));
  ASSERT_EQ(h.k, 3);
  auto host = balanced_bipartite_host(3 * 2 * 5 * 5, 3, rng);
  StepOptions options;
  options.f_override = BigInt(1);
  options.grid_samples = 64;
  auto sampled = increment_step(host.graph, h, options);
  ASSERT_TRUE(sampled.audit.grid_search);
  EXPECT_EQ(sampled.audit.grid_search->strategy, "sampled");
  EXPECT_EQ(sampled.audit.grid_search->grids_examined, 64u);
  if (sampled.embedding) {
    EXPECT_TRUE(verify_embedding(host.graph, h.graph, *sampled.embedding));
  }

  auto small = normalize_labels(complete_graph(8, rng));
  options.grid_cap = 1'000'000;
  auto exhaustive = increment_step(small, h, options);
  ASSERT_TRUE(exhaustive.audit.grid_search);
  EXPECT_EQ(exhaustive.audit.grid_search->strategy, "exhaustive");
  EXPECT_EQ(BigInt(exhaustive.audit.grid_search->grids_examined), grid_count(28, 3));
}

TEST(Step, DiagnosticWhenNoEmbeddingExists) {
  auto h = certify(parse_path_notation("P4^132"));
  auto host = star(20);  // stars avoid every path with three edges
  StepOptions options;
  options.f_override = BigInt(1);
  auto out = increment_step(host, h, options);
  EXPECT_EQ(out.kind, OutcomeKind::diagnostic);
  EXPECT_FALSE(out.diagnostic.empty());
  ASSERT_TRUE(out.audit.grid_search);
  EXPECT_EQ(out.audit.grid_search->attempts, 8);
}

TEST(Step, DeterministicGivenSeed) {
  Rng rng(13);
  auto h = certify(parse_path_notation("P5^1342"));
  auto host = balanced_bipartite_host(60, 3, rng);
  StepOptions options;
  options.f_override = BigInt(2);
  options.grid_samples = 32;
  options.seed = 99;
  auto a = increment_step(host.graph, h, options);
  auto b = increment_step(host.graph, h, options);
  ASSERT_TRUE(a.audit.grid_search && b.audit.grid_search);
  EXPECT_EQ(a.audit.grid_search->best_grid, b.audit.grid_search->best_grid);
  EXPECT_EQ(a.kind, b.kind);
}
