#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eog/bounds.hpp"
#include "eog/containment.hpp"
#include "eog/increment.hpp"
#include "eog/pattern.hpp"

namespace eog {

struct TraceEntry {
  int iteration = 0;  // index of G_i in the recursion, not a grid
  std::int64_t m = 0;
  int n = 0;
  Rational d;
  BigInt f;
  OutcomeKind outcome = OutcomeKind::diagnostic;
};

struct RecursionTrace {
  std::vector<TraceEntry> entries;
  std::string verdict;
};

/// d_{i+1} >= d_i / c3 and m_{i+1} <= c1 m_i / d_i^{c2} after every dense step,
/// the second checked as m_{i+1}^(k-1) d_i <= 134 k ell^2 m_i^(k-1).
inline bool check_trace(const RecursionTrace& trace, int k, int ell) {
  const BigInt c1_power = BigInt(134) * k * ell * ell;
  for (std::size_t i = 0; i + 1 < trace.entries.size(); ++i) {
    const TraceEntry& cur = trace.entries[i];
    const TraceEntry& next = trace.entries[i + 1];
    if (cur.outcome != OutcomeKind::dense_subgraph) continue;
    if (next.d < cur.d / (4 * k - 4)) return false;
    if (Rational(power(BigInt(next.m), k - 1)) * cur.d > Rational(c1_power * power(BigInt(cur.m), k - 1))) {
      return false;
    }
  }
  return true;
}

enum class DriveKind { found_embedding, density_certificate, budget_exhausted };

inline const char* to_string(DriveKind k) {
  switch (k) {
    case DriveKind::found_embedding: return "found_embedding";
    case DriveKind::density_certificate: return "density_certificate";
    case DriveKind::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct DriverOptions {
  int max_iterations = 64;
  StepOptions step;
  std::uint64_t search_budget = 50'000'000;  // node cap for each exact search
};

/// Either a verified embedding, or the recursion trace and the final small
/// dense subgraph. A density certificate is evidence consistent with
/// avoidance, not a proof of it.
struct DriveResult {
  DriveKind kind = DriveKind::density_certificate;
  std::optional<Embedding> embedding;
  std::string source;
  RecursionTrace trace;
  EdgeOrderedGraph final_subgraph;
  std::vector<Vertex> final_map;  // final_subgraph vertex -> host vertex
};

namespace detail {

inline Embedding lift(const Embedding& e, const std::vector<Vertex>& to_host) {
  Embedding out = e;
  for (Vertex& x : out.map) x = to_host[x];
  return out;
}

inline DriveResult star_shortcut(const EdgeOrderedGraph& g, const ForbiddenForest& h) {
  DriveResult out;
  const auto s = static_cast<int>(h.graph.edge_count());
  const Vertex center = h.witness.left_order.front();
  out.final_subgraph = g;
  out.final_map.resize(static_cast<std::size_t>(g.vertex_count()));
  std::iota(out.final_map.begin(), out.final_map.end(), 0);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) < s) continue;
    Embedding e{std::vector<Vertex>(static_cast<std::size_t>(h.ell), kUnmapped)};
    e.map[center] = x;
    auto host_inc = g.incident(x);
    auto pattern_inc = h.graph.incident(center);
    for (int i = 0; i < s; ++i) e.map[pattern_inc[i].neighbor] = host_inc[i].neighbor;
    if (!verify_embedding(g, h.graph, e)) throw std::logic_error("star shortcut produced an invalid embedding");
    out.kind = DriveKind::found_embedding;
    out.embedding = std::move(e);
    out.source = "star shortcut at host vertex " + std::to_string(x);
    return out;
  }
  out.kind = DriveKind::density_certificate;
  out.trace.verdict = "maximum degree below " + std::to_string(s) + ": no star of that size exists";
  return out;
}

}  // namespace detail

/// Runs the density-increment recursion on g. Any embedding produced along the
/// way is lifted to g and verified. When the recursion stops (fewer than k
/// edges, no further shrinking, a diagnostic step, or the iteration cap), an
/// exact budgeted search runs on the last subgraph and then on g itself.
inline DriveResult find_or_certify(const EdgeOrderedGraph& g, const ForbiddenForest& h,
                                   const DriverOptions& options = {}) {
  if (h.is_star) return detail::star_shortcut(g, h);

  DriveResult out;
  EdgeOrderedGraph current = g;
  std::vector<Vertex> to_host(static_cast<std::size_t>(g.vertex_count()));
  std::iota(to_host.begin(), to_host.end(), 0);

  for (int i = 0;; ++i) {
    if (i == options.max_iterations) {
      out.trace.verdict = "iteration cap reached";
      break;
    }
    if (current.edge_count() == 0) {
      out.trace.verdict = "no edges left";
      break;
    }
    IncrementOutcome step = increment_step(current, h, options.step);
    TraceEntry entry;
    entry.iteration = i;
    entry.m = static_cast<std::int64_t>(current.edge_count());
    entry.n = current.vertex_count();
    entry.d = current.average_degree();
    entry.f = step.audit.params.f;
    entry.outcome = step.kind;
    out.trace.entries.push_back(entry);

    if (step.kind == OutcomeKind::found_embedding) {
      Embedding e = detail::lift(*step.embedding, to_host);
      if (!verify_embedding(g, h.graph, e)) throw std::logic_error("lifted embedding failed verification");
      out.kind = DriveKind::found_embedding;
      out.embedding = std::move(e);
      out.source = "nice embedding at recursion step " + std::to_string(i);
      out.trace.verdict = "embedding found";
      out.final_subgraph = std::move(current);
      out.final_map = std::move(to_host);
      return out;
    }
    if (step.kind == OutcomeKind::host_returned) {
      out.trace.verdict = "fewer than k edges";
      break;
    }
    if (step.kind == OutcomeKind::diagnostic) {
      out.trace.verdict = "diagnostic: " + step.diagnostic;
      break;
    }
    if (step.subgraph.edge_count() == current.edge_count()) {
      out.trace.verdict = "fixpoint: the densest slice is the whole graph";
      break;
    }
    for (Vertex& v : step.vertex_map) v = to_host[v];
    to_host = std::move(step.vertex_map);
    current = std::move(step.subgraph);
  }

  out.final_subgraph = current;
  out.final_map = to_host;
  const struct {
    const EdgeOrderedGraph* host;
    const char* name;
  } stages[] = {{&current, "exact search in final subgraph"}, {&g, "exact search in host"}};
  for (const auto& stage : stages) {
    SearchResult r = find_embedding(*stage.host, h.graph, options.search_budget);
    if (r.status == SearchStatus::budget_exceeded) {
      out.kind = DriveKind::budget_exhausted;
      out.source = stage.name;
      return out;
    }
    if (r.status == SearchStatus::found) {
      Embedding e = stage.host == &g ? *r.embedding : detail::lift(*r.embedding, to_host);
      if (!verify_embedding(g, h.graph, e)) throw std::logic_error("search embedding failed verification");
      out.kind = DriveKind::found_embedding;
      out.embedding = std::move(e);
      out.source = stage.name;
      return out;
    }
  }
  out.kind = DriveKind::density_certificate;
  return out;
}

}  // namespace eog
