#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eog {

using Vertex = int;
using Label = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr Vertex kUnmapped = -1;

// Invalid graph data: bad text, broken invariants, mismatched grids.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Label label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor = 0;
  Label label = 0;
  std::size_t edge = 0;  // index into EdgeOrderedGraph::edges()
};

/// A simple graph with an injective integer edge labeling.
///
/// Construction validates every invariant and canonicalizes the storage:
/// each edge is kept with u < v and the edge list is sorted by label, so the
/// position of an edge in edges() is its rank in the edge order. Incidence
/// lists are sorted by label as well. Instances are immutable.
class EdgeOrderedGraph {
 public:
  EdgeOrderedGraph() = default;

  EdgeOrderedGraph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
    if (vertex_count < 0) throw GraphError("negative vertex count");
    for (auto& e : edges) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        throw GraphError("vertex out of range in edge " + std::to_string(e.u) + " " +
                         std::to_string(e.v));
      }
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.label < b.label; });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].label == edges[i - 1].label) {
        throw GraphError("duplicate label " + std::to_string(edges[i].label));
      }
    }
    edges_ = std::move(edges);
    adj_.assign(static_cast<std::size_t>(n_), {});
    index_.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (!index_.emplace(key(e.u, e.v), i).second) {
        throw GraphError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
      adj_[e.u].push_back({e.v, e.label, i});
      adj_[e.v].push_back({e.u, e.label, i});
    }
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  std::span<const Incidence> incident(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  std::optional<std::size_t> find_edge(Vertex a, Vertex b) const {
    if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
    auto it = index_.find(key(a, b));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

  /// Exactly 2m/n.
  Rational average_degree() const {
    if (n_ == 0) throw GraphError("average degree of a graph with no vertices");
    return Rational(2 * static_cast<std::int64_t>(edges_.size())) / n_;
  }

  /// True when the labels are exactly 1..m.
  bool labels_normalized() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].label != static_cast<Label>(i + 1)) return false;
    }
    return true;
  }

  /// Same vertex set, only the listed edges (indices into edges()).
  EdgeOrderedGraph edge_subgraph(std::span<const std::size_t> edge_indices) const {
    std::vector<Edge> out;
    out.reserve(edge_indices.size());
    for (std::size_t i : edge_indices) out.push_back(edges_.at(i));
    return EdgeOrderedGraph(n_, std::move(out));
  }

  friend bool operator==(const EdgeOrderedGraph& a, const EdgeOrderedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Order-isomorphic copy with labels 1..m. Vertex ids and edge positions are unchanged.
inline EdgeOrderedGraph normalize_labels(const EdgeOrderedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].label = static_cast<Label>(i + 1);
  return EdgeOrderedGraph(g.vertex_count(), std::move(edges));
}

/// Same graph with the edge order reversed (labels m..1).
inline EdgeOrderedGraph reverse_order(const EdgeOrderedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto m = static_cast<Label>(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].label = m - static_cast<Label>(i);
  return EdgeOrderedGraph(g.vertex_count(), std::move(edges));
}

/// A subgraph with its isolated vertices dropped, plus the map back to the parent's ids.
struct CompactGraph {
  EdgeOrderedGraph graph;
  std::vector<Vertex> original;  // compact id -> parent id
};

inline CompactGraph compact(const EdgeOrderedGraph& g) {
  std::vector<Vertex> to_new(static_cast<std::size_t>(g.vertex_count()), kUnmapped);
  CompactGraph out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 0) {
      to_new[v] = static_cast<Vertex>(out.original.size());
      out.original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({to_new[e.u], to_new[e.v], e.label});
  out.graph = EdgeOrderedGraph(static_cast<int>(out.original.size()), std::move(edges));
  return out;
}

inline BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;
  }
  return out;
}

template <typename T>
T power(T base, std::int64_t exponent) {
  T out = 1;
  while (exponent > 0) {
    if (exponent & 1) out *= base;
    base *= base;
    exponent >>= 1;
  }
  return out;
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace eog
