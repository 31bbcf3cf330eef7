#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proper 2-coloring of a forest whose close_side consists of close vertices,
/// with close_side listed as w_1..w_k: all labels at w_i precede all labels at
/// w_j for i < j. Isolated vertices sit on the close side, after the others.
struct Ocn2Witness {
  std::vector<Vertex> close_side;  // sorted by id
  std::vector<Vertex> other_side;  // sorted by id
  std::vector<Vertex> left_order;
};

/// A forbidden forest with labels normalized to 1..m and its witness.
struct ForbiddenForest {
  EdgeOrderedGraph graph;
  Ocn2Witness witness;
  int k = 0;    // number of left (close side) vertices
  int ell = 0;  // total vertex count
  bool is_star = false;
  std::vector<int> left_index;  // 0-based position in left_order, -1 for right vertices

  bool is_left(Vertex v) const { return left_index[v] >= 0; }
};

/// Vertices whose incident edges are consecutive in the edge order.
inline std::vector<Vertex> close_vertices(const EdgeOrderedGraph& h) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    auto inc = h.incident(v);
    if (inc.size() <= 1) {
      out.push_back(v);
      continue;
    }
    // incidences are sorted by label, so edge positions are increasing
    if (inc.back().edge - inc.front().edge + 1 == inc.size()) out.push_back(v);
  }
  return out;
}

inline bool is_forest(const EdgeOrderedGraph& h) {
  std::vector<Vertex> parent(static_cast<std::size_t>(h.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : h.edges()) {
    Vertex a = find(e.u);
    Vertex b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

/// Checks the witness invariants from scratch.
inline bool check_witness(const EdgeOrderedGraph& h, const Ocn2Witness& w) {
  const int n = h.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (Vertex v : w.close_side) {
    if (v < 0 || v >= n || side[v] != -1) return false;
    side[v] = 0;
  }
  for (Vertex v : w.other_side) {
    if (v < 0 || v >= n || side[v] != -1) return false;
    side[v] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) != 0) return false;
  for (const Edge& e : h.edges()) {
    if (side[e.u] == side[e.v]) return false;
  }
  for (Vertex v : w.other_side) {
    if (h.degree(v) == 0) return false;
  }
  auto close = close_vertices(h);
  for (Vertex v : w.close_side) {
    if (!std::binary_search(close.begin(), close.end(), v)) return false;
  }
  auto order = w.left_order;
  auto sorted_close = w.close_side;
  std::sort(order.begin(), order.end());
  std::sort(sorted_close.begin(), sorted_close.end());
  if (order != sorted_close) return false;
  bool seen_isolated = false;
  for (std::size_t i = 0; i < w.left_order.size(); ++i) {
    Vertex v = w.left_order[i];
    if (h.degree(v) == 0) {
      seen_isolated = true;
      continue;
    }
    if (seen_isolated) return false;
    if (i + 1 < w.left_order.size()) {
      Vertex next = w.left_order[i + 1];
      if (h.degree(next) > 0 && h.incident(v).back().label >= h.incident(next).front().label) {
        return false;
      }
    }
  }
  return true;
}

/// Finds a witness, or nullopt when no proper 2-coloring has an all-close
/// color class (order chromatic number above 2).
///
/// Per component: if only one side is all-close it is taken; if both are, the
/// smaller side is taken, and on equal size the side holding the component's
/// lowest vertex id.
inline std::optional<Ocn2Witness> ocn2_witness(const EdgeOrderedGraph& h) {
  if (h.edge_count() == 0) throw PatternError("pattern has no edges");
  if (!is_forest(h)) throw PatternError("pattern is not a forest");
  const int n = h.vertex_count();
  auto close_list = close_vertices(h);
  std::vector<char> close(static_cast<std::size_t>(n), 0);
  for (Vertex v : close_list) close[v] = 1;

  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<char> on_close(static_cast<std::size_t>(n), 0);
  Ocn2Witness w;
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] != -1) continue;
    std::vector<Vertex> comp{root};
    color[root] = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const Incidence& inc : h.incident(comp[i])) {
        if (color[inc.neighbor] == -1) {
          color[inc.neighbor] = 1 - color[comp[i]];
          comp.push_back(inc.neighbor);
        }
      }
    }
    if (comp.size() == 1) {
      on_close[root] = 1;
      continue;
    }
    std::size_t size[2] = {0, 0};
    bool all_close[2] = {true, true};
    for (Vertex v : comp) {
      ++size[color[v]];
      if (!close[v]) all_close[color[v]] = false;
    }
    int chosen;
    if (all_close[0] && all_close[1]) {
      chosen = size[0] < size[1] ? 0 : size[1] < size[0] ? 1 : color[root];  // root is the lowest id
    } else if (all_close[0]) {
      chosen = 0;
    } else if (all_close[1]) {
      chosen = 1;
    } else {
      return std::nullopt;
    }
    for (Vertex v : comp) on_close[v] = color[v] == chosen;
  }

  for (Vertex v = 0; v < n; ++v) (on_close[v] ? w.close_side : w.other_side).push_back(v);
  std::vector<Vertex> touching;
  std::vector<Vertex> isolated;
  for (Vertex v : w.close_side) (h.degree(v) > 0 ? touching : isolated).push_back(v);
  std::sort(touching.begin(), touching.end(), [&](Vertex a, Vertex b) {
    return h.incident(a).front().label < h.incident(b).front().label;
  });
  for (std::size_t i = 0; i + 1 < touching.size(); ++i) {
    if (h.incident(touching[i]).back().label >= h.incident(touching[i + 1]).front().label) {
      throw std::logic_error("close vertices on one side have overlapping label intervals");
    }
  }
  w.left_order = touching;
  w.left_order.insert(w.left_order.end(), isolated.begin(), isolated.end());
  return w;
}

/// Certifies h as a forbidden forest. k = 1 marks the edge-ordered stars,
/// which have a single ordering up to isomorphism.
inline ForbiddenForest certify(const EdgeOrderedGraph& h) {
  auto w = ocn2_witness(h);
  if (!w) throw PatternError("no proper 2-coloring with an all-close side; order chromatic number exceeds 2");
  ForbiddenForest f;
  f.graph = normalize_labels(h);
  f.witness = std::move(*w);
  f.k = static_cast<int>(f.witness.close_side.size());
  f.ell = h.vertex_count();
  f.is_star = f.k == 1;
  f.left_index.assign(static_cast<std::size_t>(f.ell), -1);
  for (std::size_t i = 0; i < f.witness.left_order.size(); ++i) {
    f.left_index[f.witness.left_order[i]] = static_cast<int>(i);
  }
  return f;
}

}  // namespace eog
