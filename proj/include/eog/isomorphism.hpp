#pragma once

#include <map>
#include <string>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

namespace detail {

// Incident label ranks of every vertex. An order isomorphism between two
// normalized graphs sends the rank-r edge to the rank-r edge, so a vertex can
// only map to a vertex with the identical rank set.
inline std::vector<std::vector<std::size_t>> rank_signatures(const EdgeOrderedGraph& g) {
  std::vector<std::vector<std::size_t>> sig(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const Incidence& inc : g.incident(v)) sig[v].push_back(inc.edge);
  }
  return sig;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const EdgeOrderedGraph& a, const EdgeOrderedGraph& b)
      : a_(a), b_(b), map_(a.vertex_count(), kUnmapped), inverse_(b.vertex_count(), kUnmapped) {
    auto sa = rank_signatures(a);
    auto sb = rank_signatures(b);
    std::map<std::vector<std::size_t>, std::vector<Vertex>> by_sig;
    for (Vertex v = 0; v < b.vertex_count(); ++v) by_sig[sb[v]].push_back(v);
    candidates_.resize(static_cast<std::size_t>(a.vertex_count()));
    for (Vertex v = 0; v < a.vertex_count(); ++v) {
      if (auto it = by_sig.find(sa[v]); it != by_sig.end()) candidates_[v] = it->second;
    }
  }

  bool run() {
    for (const auto& c : candidates_) {
      if (c.empty()) return false;
    }
    return extend(0);
  }

 private:
  bool compatible(Vertex x, Vertex y) const {
    if (map_[x] != kUnmapped) return map_[x] == y;
    if (inverse_[y] != kUnmapped) return false;
    const auto& c = candidates_[x];
    return std::binary_search(c.begin(), c.end(), y);
  }

  bool extend(std::size_t i) {
    if (i == a_.edge_count()) return true;  // isolated vertices match by signature count
    const Edge& ea = a_.edge(i);
    const Edge& eb = b_.edge(i);
    for (int flip = 0; flip < 2; ++flip) {
      Vertex x = flip ? eb.v : eb.u;
      Vertex y = flip ? eb.u : eb.v;
      if (!compatible(ea.u, x) || !compatible(ea.v, y)) continue;
      bool new_u = map_[ea.u] == kUnmapped;
      bool new_v = map_[ea.v] == kUnmapped;
      if (new_u) map_[ea.u] = x, inverse_[x] = ea.u;
      if (new_v) map_[ea.v] = y, inverse_[y] = ea.v;
      if (extend(i + 1)) return true;
      if (new_u) map_[ea.u] = kUnmapped, inverse_[x] = kUnmapped;
      if (new_v) map_[ea.v] = kUnmapped, inverse_[y] = kUnmapped;
    }
    return false;
  }

  const EdgeOrderedGraph& a_;
  const EdgeOrderedGraph& b_;
  std::vector<Vertex> map_;
  std::vector<Vertex> inverse_;
  std::vector<std::vector<Vertex>> candidates_;
};

inline void canonical_search(const EdgeOrderedGraph& g, std::size_t i, std::vector<Vertex>& relabel,
                             Vertex next, std::vector<std::pair<Vertex, Vertex>>& current,
                             std::vector<std::pair<Vertex, Vertex>>& best, bool& have_best) {
  auto prefix_end = best.begin() + static_cast<std::ptrdiff_t>(current.size());
  if (have_best &&
      std::lexicographical_compare(best.begin(), prefix_end, current.begin(), current.end())) {
    return;
  }
  if (i == g.edge_count()) {
    if (!have_best || current < best) best = current, have_best = true;
    return;
  }
  const Edge& e = g.edge(i);
  for (int flip = 0; flip < 2; ++flip) {
    Vertex a = flip ? e.v : e.u;
    Vertex b = flip ? e.u : e.v;
    bool both_new = relabel[a] == kUnmapped && relabel[b] == kUnmapped;
    if (flip && !both_new) break;
    Vertex nx = next;
    bool new_a = relabel[a] == kUnmapped;
    if (new_a) relabel[a] = nx++;
    bool new_b = relabel[b] == kUnmapped;
    if (new_b) relabel[b] = nx++;
    current.emplace_back(std::min(relabel[a], relabel[b]), std::max(relabel[a], relabel[b]));
    canonical_search(g, i + 1, relabel, nx, current, best, have_best);
    current.pop_back();
    if (new_a) relabel[a] = kUnmapped;
    if (new_b) relabel[b] = kUnmapped;
  }
}

}  // namespace detail

/// True iff some vertex bijection maps a's edges onto b's edges preserving the
/// edge order. Labels only matter through their relative order.
inline bool is_isomorphic(const EdgeOrderedGraph& a, const EdgeOrderedGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return detail::IsomorphismSearch(normalize_labels(a), normalize_labels(b)).run();
}

/// Isomorphic, or isomorphic once the edge order of b is reversed. Reversing
/// the order of host and pattern together preserves containment, so
/// equivalent patterns share their extremal function.
inline bool is_equivalent(const EdgeOrderedGraph& a, const EdgeOrderedGraph& b) {
  return is_isomorphic(a, b) || is_isomorphic(a, reverse_order(b));
}

/// String that is equal for two graphs exactly when they are order-isomorphic.
///
/// Vertices are renumbered by first appearance in the edge order; the only
/// freedom is the orientation of edges whose endpoints are both new, and the
/// lexicographically least resulting edge sequence is kept.
inline std::string canonical_form(const EdgeOrderedGraph& g) {
  std::vector<Vertex> relabel(static_cast<std::size_t>(g.vertex_count()), kUnmapped);
  std::vector<std::pair<Vertex, Vertex>> current;
  std::vector<std::pair<Vertex, Vertex>> best;
  bool have_best = false;
  detail::canonical_search(g, 0, relabel, 0, current, best, have_best);
  std::string out = std::to_string(g.vertex_count()) + ":" + std::to_string(g.edge_count()) + ":";
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(best[i].first) + "-" + std::to_string(best[i].second);
  }
  return out;
}

}  // namespace eog
