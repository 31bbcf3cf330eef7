#pragma once

#include <optional>
#include <vector>

#include "eog/containment.hpp"
#include "eog/pattern.hpp"
#include "eog/weights.hpp"

namespace eog {

/// An embedding of a sub-pattern that maps right vertices to heavy vertices and
/// every edge at w_i to a class-i host edge.
struct NiceEmbedding {
  Embedding embedding;
  Grid grid;
};

/// Sub-pattern given as a vertex subset; its edges are the induced ones.
using VertexSubset = std::vector<char>;

namespace detail {

inline std::vector<std::size_t> induced_edges(const EdgeOrderedGraph& h, const VertexSubset& keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (keep[h.edge(i).u] && keep[h.edge(i).v]) out.push_back(i);
  }
  return out;
}

inline std::vector<Incidence> induced_incidences(const EdgeOrderedGraph& h, const VertexSubset& keep,
                                                 Vertex v) {
  std::vector<Incidence> out;
  for (const Incidence& inc : h.incident(v)) {
    if (keep[inc.neighbor]) out.push_back(inc);
  }
  return out;
}

// The inductive construction: peel a left leaf, or a right leaf hanging off an
// extreme edge of its left neighbor, embed the rest, then extend.
class NiceEmbedder {
 public:
  NiceEmbedder(const ForbiddenForest& pattern, const EdgeOrderedGraph& host, const Grid& grid)
      : h_(pattern), g_(host), t_(grid) {}

  std::optional<std::vector<Vertex>> embed(const VertexSubset& keep, const EdgeMask& mask) {
    const WeightProfile profile = classify(g_, t_, h_.ell, mask);
    const auto pattern_edges = induced_edges(h_.graph, keep);
    if (pattern_edges.empty()) return embed_vertices(keep, profile);

    for (Vertex w : h_.witness.left_order) {
      if (keep[w] && induced_incidences(h_.graph, keep, w).size() == 1) {
        return embed_left_leaf(keep, mask, w);
      }
    }
    return embed_right_leaf(keep, mask, profile);
  }

 private:
  std::optional<std::vector<Vertex>> embed_vertices(const VertexSubset& keep,
                                                    const WeightProfile& profile) const {
    std::vector<Vertex> map(static_cast<std::size_t>(h_.ell), kUnmapped);
    std::vector<char> used(static_cast<std::size_t>(g_.vertex_count()), 0);
    auto take = [&](bool heavy_only) -> Vertex {
      for (Vertex x = 0; x < g_.vertex_count(); ++x) {
        if (!used[x] && (!heavy_only || profile.heavy[x])) {
          used[x] = 1;
          return x;
        }
      }
      return kUnmapped;
    };
    for (int pass = 0; pass < 2; ++pass) {  // right vertices first: they need heavy images
      for (Vertex p = 0; p < h_.ell; ++p) {
        if (!keep[p] || h_.is_left(p) != (pass == 1)) continue;
        Vertex x = take(true);
        if (x == kUnmapped && pass == 1) x = take(false);
        if (x == kUnmapped) return std::nullopt;
        map[p] = x;
      }
    }
    return map;
  }

  std::vector<char> image_of(const std::vector<Vertex>& map) const {
    std::vector<char> used(static_cast<std::size_t>(g_.vertex_count()), 0);
    for (Vertex x : map) {
      if (x != kUnmapped) used[x] = 1;
    }
    return used;
  }

  std::optional<std::vector<Vertex>> embed_left_leaf(const VertexSubset& keep, const EdgeMask& mask,
                                                     Vertex w) {
    VertexSubset rest = keep;
    rest[w] = 0;
    auto map = embed(rest, mask);
    if (!map) return std::nullopt;
    const Vertex y = induced_incidences(h_.graph, keep, w).front().neighbor;
    const int cls = h_.left_index[w] + 1;
    const auto used = image_of(*map);
    Vertex best = kUnmapped;
    for (const Incidence& inc : g_.incident((*map)[y])) {
      if (mask[inc.edge] && t_.class_of(inc.label) == cls && !used[inc.neighbor] &&
          (best == kUnmapped || inc.neighbor < best)) {
        best = inc.neighbor;
      }
    }
    if (best == kUnmapped) return std::nullopt;
    (*map)[w] = best;
    return map;
  }

  // Start at the lowest non-isolated vertex and keep walking along the lowest
  // incident edge, or the highest when the lowest leads back.
  Vertex extremal_walk(const VertexSubset& keep) const {
    Vertex current = kUnmapped;
    for (Vertex v = 0; v < h_.ell; ++v) {
      if (keep[v] && !induced_incidences(h_.graph, keep, v).empty()) {
        current = v;
        break;
      }
    }
    Vertex previous = kUnmapped;
    while (true) {
      auto inc = induced_incidences(h_.graph, keep, current);
      if (previous != kUnmapped && inc.size() == 1) return current;
      Vertex next = inc.front().neighbor;
      if (next == previous) next = inc.back().neighbor;
      previous = current;
      current = next;
    }
  }

  // Eligible edges for z: class cls edges zx of the subgraph with x heavy.
  std::vector<Incidence> eligible(Vertex z, const EdgeMask& mask, const WeightProfile& profile,
                                  int cls) const {
    std::vector<Incidence> out;
    for (const Incidence& inc : g_.incident(z)) {
      if (mask[inc.edge] && t_.class_of(inc.label) == cls && profile.heavy[inc.neighbor]) {
        out.push_back(inc);
      }
    }
    return out;
  }

  std::vector<Incidence> trimmed(std::vector<Incidence> list, bool smallest) const {
    const auto keep = static_cast<std::size_t>(h_.ell);
    if (list.size() > keep) {
      if (smallest) {
        list.resize(keep);
      } else {
        list.erase(list.begin(), list.end() - static_cast<std::ptrdiff_t>(keep));
      }
    }
    return list;
  }

  std::optional<std::vector<Vertex>> embed_right_leaf(const VertexSubset& keep, const EdgeMask& mask,
                                                      const WeightProfile& profile) {
    const Vertex y = extremal_walk(keep);
    if (h_.is_left(y)) throw std::logic_error("extremal walk ended at a left leaf");
    const Vertex w = induced_incidences(h_.graph, keep, y).front().neighbor;
    const auto at_w = induced_incidences(h_.graph, keep, w);
    const bool smallest = at_w.front().neighbor == y;
    const int cls = h_.left_index[w] + 1;

    EdgeMask reduced = mask;
    for (Vertex z = 0; z < g_.vertex_count(); ++z) {
      for (const Incidence& inc : trimmed(eligible(z, mask, profile, cls), smallest)) {
        reduced[inc.edge] = 0;
      }
    }
    VertexSubset rest = keep;
    rest[y] = 0;
    auto map = embed(rest, reduced);
    if (!map) return std::nullopt;

    const Vertex z = (*map)[w];
    Label lo = 0;
    Label hi = 0;
    bool first = true;
    for (const Incidence& inc : at_w) {
      if (inc.neighbor == y) continue;
      Label image = g_.edge(*g_.find_edge(z, (*map)[inc.neighbor])).label;
      lo = first ? image : std::min(lo, image);
      hi = first ? image : std::max(hi, image);
      first = false;
    }
    const auto used = image_of(*map);
    auto pick = [&](const std::vector<Incidence>& options) {
      Vertex best = kUnmapped;
      for (const Incidence& inc : options) {
        bool ordered = smallest ? inc.label < lo : inc.label > hi;
        if (ordered && !used[inc.neighbor] && (best == kUnmapped || inc.neighbor < best)) {
          best = inc.neighbor;
        }
      }
      return best;
    };
    const auto all_eligible = eligible(z, mask, profile, cls);
    Vertex x = pick(trimmed(all_eligible, smallest));  // the deleted edges at z
    if (x == kUnmapped) x = pick(all_eligible);         // only reachable below the threshold
    if (x == kUnmapped) return std::nullopt;
    (*map)[y] = x;
    return map;
  }

  const ForbiddenForest& h_;
  const EdgeOrderedGraph& g_;
  const Grid& t_;
};

}  // namespace detail

/// Runs the inductive construction for the sub-pattern induced on `keep` inside
/// the host subgraph `mask`. Host labels must be 1..m. Whenever
/// W_t(subgraph) >= weight_threshold(ell, u, n) with u the sub-pattern's edge
/// count, a nice embedding is returned; below that it may or may not succeed.
inline std::optional<NiceEmbedding> nice_embed(const ForbiddenForest& pattern, const EdgeOrderedGraph& host,
                                               const Grid& grid, const VertexSubset& keep,
                                               const EdgeMask& mask) {
  if (!host.labels_normalized()) throw GraphError("nice_embed needs host labels 1..m");
  grid.check_against(host);
  if (grid.classes() != pattern.k) throw GraphError("grid must have k classes");
  if (keep.size() != static_cast<std::size_t>(pattern.ell)) throw GraphError("vertex subset size mismatch");
  detail::NiceEmbedder embedder(pattern, host, grid);
  auto map = embedder.embed(keep, mask);
  if (!map) return std::nullopt;
  return NiceEmbedding{Embedding{std::move(*map)}, grid};
}

inline std::optional<NiceEmbedding> nice_embed(const ForbiddenForest& pattern, const EdgeOrderedGraph& host,
                                               const Grid& grid) {
  return nice_embed(pattern, host, grid, VertexSubset(static_cast<std::size_t>(pattern.ell), 1),
                    full_mask(host));
}

/// Re-checks an embedding of the induced sub-pattern against the definition:
/// injective, edges to subgraph edges, order preserved, right vertices heavy and
/// every edge in the class of its left endpoint.
inline bool is_nice(const ForbiddenForest& pattern, const EdgeOrderedGraph& host, const Grid& grid,
                    const VertexSubset& keep, const EdgeMask& mask, const Embedding& e) {
  if (e.map.size() != static_cast<std::size_t>(pattern.ell)) return false;
  const WeightProfile profile = classify(host, grid, pattern.ell, mask);
  std::vector<char> used(static_cast<std::size_t>(host.vertex_count()), 0);
  for (Vertex p = 0; p < pattern.ell; ++p) {
    Vertex x = e.map[p];
    if (!keep[p]) {
      if (x != kUnmapped) return false;
      continue;
    }
    if (x < 0 || x >= host.vertex_count() || used[x]) return false;
    used[x] = 1;
    if (!pattern.is_left(p) && !profile.heavy[x]) return false;
  }
  std::optional<Label> previous;
  for (std::size_t i : detail::induced_edges(pattern.graph, keep)) {
    const Edge& pe = pattern.graph.edge(i);
    auto he = host.find_edge(e.map[pe.u], e.map[pe.v]);
    if (!he || !mask[*he]) return false;
    Label image = host.edge(*he).label;
    if (previous && image <= *previous) return false;
    previous = image;
    Vertex left = pattern.is_left(pe.u) ? pe.u : pe.v;
    if (grid.class_of(image) != pattern.left_index[left] + 1) return false;
  }
  return true;
}

inline bool is_nice(const ForbiddenForest& pattern, const EdgeOrderedGraph& host, const Grid& grid,
                    const Embedding& e) {
  return is_nice(pattern, host, grid, VertexSubset(static_cast<std::size_t>(pattern.ell), 1),
                 full_mask(host), e);
}

}  // namespace eog
