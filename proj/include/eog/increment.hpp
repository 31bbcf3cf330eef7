#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "eog/containment.hpp"
#include "eog/graph.hpp"
#include "eog/interval_cover.hpp"
#include "eog/nice_embedding.hpp"
#include "eog/pattern.hpp"
#include "eog/weights.hpp"

namespace eog {

/// floor((134 k ell^2 / d)^(1/(k-1)) * m), computed exactly: the result is the
/// largest F >= 0 with F^(k-1) * p <= 134 k ell^2 * q * m^(k-1), where d = p/q.
inline BigInt compute_f(int k, int ell, const Rational& d, Label m) {
  if (k < 2) throw std::invalid_argument("compute_f needs k >= 2");
  if (d <= 0) throw std::invalid_argument("compute_f needs d > 0");
  const BigInt p = numerator(d);
  const BigInt q = denominator(d);
  const BigInt rhs = BigInt(134) * k * ell * ell * q * power(BigInt(m), k - 1);
  auto fits = [&](const BigInt& x) { return power(x, k - 1) * p <= rhs; };
  BigInt hi = 1;
  while (fits(hi)) hi *= 2;
  BigInt lo = 0;  // fits(lo) holds, fits(hi) fails
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

struct StepParams {
  int k = 0;
  int ell = 0;
  Label m = 0;
  int n = 0;
  Rational d;
  BigInt f;
  Label window = 0;  // min(f, m): wider intervals or slices behave identically
};

inline StepParams make_step_params(const EdgeOrderedGraph& g, const ForbiddenForest& h,
                                   std::optional<BigInt> f_override = std::nullopt) {
  StepParams p;
  p.k = h.k;
  p.ell = h.ell;
  p.m = static_cast<Label>(g.edge_count());
  p.n = g.vertex_count();
  p.d = g.average_degree();
  p.f = f_override ? *f_override : compute_f(p.k, p.ell, p.d, p.m);
  if (p.f < 0) throw std::invalid_argument("window length must be non-negative");
  p.window = p.f >= p.m ? p.m : static_cast<Label>(p.f);
  return p;
}

struct VertexCover {
  int degree = 0;
  std::int64_t covered = 0;
  std::vector<Interval> intervals;
  bool tame = true;
};

struct CoverReport {
  std::vector<VertexCover> vertices;
  std::int64_t tame_count = 0;
  std::int64_t wild_count = 0;
};

inline std::vector<Label> incident_labels(const EdgeOrderedGraph& g, Vertex v) {
  std::vector<Label> out;
  for (const Incidence& inc : g.incident(v)) out.push_back(inc.label);
  return out;
}

/// Tame: at least 9/10 of the incident labels fit in k-1 intervals of length f
/// (checked as 10 * covered >= 9 * degree).
inline CoverReport tame_wild(const EdgeOrderedGraph& g, const StepParams& params) {
  CoverReport report;
  report.vertices.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    VertexCover& vc = report.vertices[v];
    const auto labels = incident_labels(g, v);
    vc.degree = static_cast<int>(labels.size());
    auto cover = best_interval_cover(labels, params.k - 1, params.window);
    vc.covered = cover.covered;
    vc.intervals = std::move(cover.intervals);
    vc.tame = 10 * vc.covered >= 9 * static_cast<std::int64_t>(vc.degree);
    ++(vc.tame ? report.tame_count : report.wild_count);
  }
  return report;
}

/// d_v (f+1)^(k-1) / (10 k C(m-1, k-1)): the lower bound on the mean weight of
/// a wild vertex over uniformly random grids.
inline Rational expected_weight_lower_bound(std::int64_t degree, const BigInt& f, int k, Label m) {
  if (k < 2) throw std::invalid_argument("expected weight bound needs k >= 2");
  if (m < k) throw std::invalid_argument("expected weight bound needs m >= k");
  return Rational(BigInt(degree) * power(BigInt(f + 1), k - 1)) / (BigInt(10) * k * binomial(m - 1, k - 1));
}

struct GStar {
  EdgeOrderedGraph graph;             // same vertex ids as the host
  std::vector<char> vertices;         // the tame vertices
  std::vector<std::size_t> host_edge; // edge i of graph is host edge host_edge[i]
};

/// Edges uv with both ends tame whose label is covered by an interval of u and
/// by an interval of v.
inline GStar build_gstar(const EdgeOrderedGraph& g, const CoverReport& report) {
  auto covered_at = [&](Vertex v, Label label) {
    const auto& ivs = report.vertices[v].intervals;
    return std::any_of(ivs.begin(), ivs.end(), [&](const Interval& iv) { return iv.contains(label); });
  };
  GStar out;
  out.vertices.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) out.vertices[v] = report.vertices[v].tame;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    if (out.vertices[e.u] && out.vertices[e.v] && covered_at(e.u, e.label) && covered_at(e.v, e.label)) {
      out.host_edge.push_back(i);
    }
  }
  out.graph = g.edge_subgraph(out.host_edge);
  return out;
}

struct Slice {
  int index = 0;                   // j, 1-based
  std::vector<std::size_t> edges;  // indices into the sliced graph
  std::int64_t vertex_count = 0;   // vertices with an incident edge in the slice
  Rational average_degree;         // 0 for an empty slice
};

/// Slice j holds the edges with (j-1) f < label <= j f, j = 1..ceil(m/f).
inline std::vector<Slice> partition_slices(const EdgeOrderedGraph& gstar, Label f, Label m) {
  if (f <= 0) throw std::invalid_argument("slice width must be positive");
  const Label count = (m + f - 1) / f;
  std::vector<Slice> slices(static_cast<std::size_t>(count));
  for (Label j = 0; j < count; ++j) slices[j].index = static_cast<int>(j + 1);
  for (std::size_t i = 0; i < gstar.edge_count(); ++i) {
    Label label = gstar.edge(i).label;
    if (label < 1 || label > m) throw GraphError("slice label outside 1..m");
    slices[static_cast<std::size_t>((label - 1) / f)].edges.push_back(i);
  }
  std::vector<int> stamp(static_cast<std::size_t>(gstar.vertex_count()), 0);
  for (Slice& s : slices) {
    for (std::size_t i : s.edges) {
      for (Vertex v : {gstar.edge(i).u, gstar.edge(i).v}) {
        if (stamp[v] != s.index) stamp[v] = s.index, ++s.vertex_count;
      }
    }
    s.average_degree = s.vertex_count == 0
                           ? Rational(0)
                           : Rational(2 * static_cast<std::int64_t>(s.edges.size())) / s.vertex_count;
  }
  return slices;
}

struct StepOptions {
  std::uint64_t seed = 0;
  std::uint64_t grid_cap = 200'000;  // enumerate every grid when C(m-1,k-1) is at most this
  std::uint64_t grid_samples = 4'096;
  int embed_attempts = 8;            // heaviest grids handed to nice_embed
  std::optional<BigInt> f_override;  // replaces compute_f; for exercising the machinery
};

struct GridSearchAudit {
  std::string strategy;  // "sweep", "exhaustive" or "sampled"
  std::uint64_t grids_examined = 0;
  std::int64_t threshold = 0;  // 2 ell^2 n
  std::int64_t best_weight = 0;
  std::vector<Label> best_grid;
  int attempts = 0;
  std::vector<Label> embedding_grid;  // empty when no grid produced an embedding
};

enum class OutcomeKind { dense_subgraph, found_embedding, host_returned, diagnostic };

inline const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::dense_subgraph: return "dense_subgraph";
    case OutcomeKind::found_embedding: return "found_embedding";
    case OutcomeKind::host_returned: return "host_returned";
    case OutcomeKind::diagnostic: return "diagnostic";
  }
  return "?";
}

struct StepAudit {
  StepParams params;
  CoverReport cover;
  std::int64_t gstar_edges = 0;
  std::int64_t gstar_vertices = 0;
  std::vector<Slice> slices;
  int chosen_slice = 0;  // 0 when no slice was selected
  std::optional<GridSearchAudit> grid_search;
};

struct IncrementOutcome {
  OutcomeKind kind = OutcomeKind::diagnostic;
  EdgeOrderedGraph subgraph;        // dense slice (isolated vertices dropped) or the host itself
  std::vector<Vertex> vertex_map;   // subgraph vertex -> host vertex
  Rational average_degree;          // of subgraph
  std::optional<Embedding> embedding;
  std::string diagnostic;
  StepAudit audit;
};

namespace detail {

struct RankedGrid {
  std::int64_t weight;
  Grid grid;
};

inline void keep_heaviest(std::vector<RankedGrid>& top, std::size_t limit, std::int64_t weight,
                          const Grid& grid) {
  if (top.size() == limit && top.back().weight >= weight) return;
  auto pos = std::find_if(top.begin(), top.end(), [&](const RankedGrid& r) { return r.weight < weight; });
  top.insert(pos, {weight, grid});
  if (top.size() > limit) top.pop_back();
}

inline IncrementOutcome heavy_grid_branch(const EdgeOrderedGraph& g, const EdgeOrderedGraph& normalized,
                                          const ForbiddenForest& h, const StepOptions& options,
                                          IncrementOutcome out) {
  const auto& params = out.audit.params;
  GridSearchAudit audit;
  audit.threshold = weight_threshold(h.ell, h.ell - 1, params.n);
  const auto limit = static_cast<std::size_t>(std::max(1, options.embed_attempts));
  std::vector<RankedGrid> top;

  if (h.k == 2) {
    audit.strategy = "sweep";
    auto weights = two_class_weights(normalized);
    for (std::size_t s = 0; s < weights.size(); ++s) {
      keep_heaviest(top, limit, weights[s], Grid({0, static_cast<Label>(s + 1), params.m}));
    }
    audit.grids_examined = weights.size();
  } else if (grid_count(params.m, h.k) <= options.grid_cap) {
    audit.strategy = "exhaustive";
    for_each_grid(params.m, h.k, [&](const Grid& t) {
      keep_heaviest(top, limit, graph_weight(normalized, t), t);
      ++audit.grids_examined;
      return true;
    });
  } else {
    audit.strategy = "sampled";
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t i = 0; i < options.grid_samples; ++i) {
      Grid t = sample_grid(params.m, h.k, rng);
      keep_heaviest(top, limit, graph_weight(normalized, t), t);
      ++audit.grids_examined;
    }
  }
  if (!top.empty()) {
    audit.best_weight = top.front().weight;
    audit.best_grid = top.front().grid.thresholds();
  }
  for (const RankedGrid& candidate : top) {
    ++audit.attempts;
    auto nice = nice_embed(h, normalized, candidate.grid);
    if (nice && verify_embedding(g, h.graph, nice->embedding)) {
      audit.embedding_grid = candidate.grid.thresholds();
      out.kind = OutcomeKind::found_embedding;
      out.embedding = nice->embedding;
      out.audit.grid_search = std::move(audit);
      return out;
    }
  }
  out.kind = OutcomeKind::diagnostic;
  out.diagnostic = "G* has fewer than m/2 edges but no examined grid yielded a nice embedding "
                   "(best weight " + std::to_string(audit.best_weight) + ", threshold " +
                   std::to_string(audit.threshold) + ")";
  out.audit.grid_search = std::move(audit);
  return out;
}

}  // namespace detail

/// One density-increment step against a certified forest with k >= 2.
///
/// m < k: the host itself is returned. Otherwise G* is built from the tame
/// vertices; when it keeps at least half the edges the densest label slice is
/// returned (at most f edges, average degree at least d/(4k-4)). When it does
/// not, some grid must have weight >= 2 ell^2 n unless the host contains the
/// pattern, and the heaviest grids found are handed to nice_embed. If that
/// fails too the outcome is a diagnostic carrying the full audit.
inline IncrementOutcome increment_step(const EdgeOrderedGraph& g, const ForbiddenForest& h,
                                       const StepOptions& options = {}) {
  if (h.k < 2) throw std::invalid_argument("increment_step needs a forest with k >= 2");
  if (g.edge_count() == 0) throw std::invalid_argument("increment_step needs a host with edges");

  IncrementOutcome out;
  const Label m = static_cast<Label>(g.edge_count());
  if (m < h.k) {
    out.kind = OutcomeKind::host_returned;
    out.subgraph = g;
    out.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
    out.average_degree = g.average_degree();
    out.audit.params.k = h.k;
    out.audit.params.ell = h.ell;
    out.audit.params.m = m;
    out.audit.params.n = g.vertex_count();
    out.audit.params.d = g.average_degree();
    return out;
  }

  const EdgeOrderedGraph normalized = normalize_labels(g);
  StepAudit& audit = out.audit;
  audit.params = make_step_params(normalized, h, options.f_override);
  if (audit.params.window <= 0) throw std::invalid_argument("window length must be positive");
  audit.cover = tame_wild(normalized, audit.params);
  const GStar gstar = build_gstar(normalized, audit.cover);
  audit.gstar_edges = static_cast<std::int64_t>(gstar.graph.edge_count());
  audit.gstar_vertices = std::count(gstar.vertices.begin(), gstar.vertices.end(), 1);

  if (2 * audit.gstar_edges < m) return detail::heavy_grid_branch(g, normalized, h, options, std::move(out));

  audit.slices = partition_slices(gstar.graph, audit.params.window, m);
  const Slice* best = &audit.slices.front();
  for (const Slice& s : audit.slices) {
    if (s.average_degree > best->average_degree) best = &s;
  }
  audit.chosen_slice = best->index;

  std::vector<std::size_t> host_edges;
  for (std::size_t i : best->edges) host_edges.push_back(gstar.host_edge[i]);
  CompactGraph slice = compact(g.edge_subgraph(host_edges));
  out.kind = OutcomeKind::dense_subgraph;
  out.subgraph = std::move(slice.graph);
  out.vertex_map = std::move(slice.original);
  out.average_degree = best->average_degree;

  const Rational required = audit.params.d / (4 * h.k - 4);
  if (BigInt(out.subgraph.edge_count()) > audit.params.f || out.average_degree < required) {
    throw std::logic_error("densest slice violates the increment postconditions");
  }
  return out;
}

}  // namespace eog
