#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

/// Integer thresholds 0 = t_0 < t_1 < ... < t_k = m. Class j (1-based) holds
/// the labels in (t_{j-1}, t_j].
class Grid {
 public:
  Grid() = default;

  explicit Grid(std::vector<Label> thresholds) : t_(std::move(thresholds)) {
    if (t_.size() < 2 || t_.front() != 0) throw GraphError("grid must start at 0 and have k >= 1 classes");
    for (std::size_t i = 1; i < t_.size(); ++i) {
      if (t_[i] <= t_[i - 1]) throw GraphError("grid thresholds must be strictly increasing");
    }
  }

  /// Thresholds as close to equal spacing as integers allow; needs m >= k.
  static Grid even(Label m, int k) {
    if (k < 1 || m < k) throw GraphError("even grid needs m >= k >= 1");
    std::vector<Label> t(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) t[j] = m * j / k;
    return Grid(std::move(t));
  }

  int classes() const { return static_cast<int>(t_.size()) - 1; }
  Label total() const { return t_.back(); }
  const std::vector<Label>& thresholds() const { return t_; }

  /// 1-based class of a label, 0 when the label is outside (0, m].
  int class_of(Label label) const {
    if (label <= 0 || label > t_.back()) return 0;
    return static_cast<int>(std::lower_bound(t_.begin(), t_.end(), label) - t_.begin());
  }

  void check_against(const EdgeOrderedGraph& g) const {
    if (t_.back() != static_cast<Label>(g.edge_count())) {
      throw GraphError("grid/graph mismatch: t_k = " + std::to_string(t_.back()) + " but m = " +
                       std::to_string(g.edge_count()));
    }
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<Label> t_;
};

/// C(m-1, k-1) grids exist for given m and k.
inline BigInt grid_count(Label m, int k) { return binomial(m - 1, k - 1); }

/// Visits every grid in lexicographic order of thresholds. The visitor returns
/// false to stop early.
inline void for_each_grid(Label m, int k, const std::function<bool(const Grid&)>& visit) {
  if (k < 1 || m < k) return;
  std::vector<Label> t(static_cast<std::size_t>(k) + 1);
  t[0] = 0;
  t[static_cast<std::size_t>(k)] = m;
  for (int j = 1; j < k; ++j) t[j] = j;
  while (true) {
    if (!visit(Grid(t))) return;
    int j = k - 1;
    while (j >= 1 && t[j] == m - (k - j)) --j;
    if (j < 1) return;
    ++t[j];
    for (int i = j + 1; i < k; ++i) t[i] = t[i - 1] + 1;
  }
}

/// A uniformly random grid: a uniform (k-1)-subset of {1..m-1} (Floyd's sampling).
template <typename Rng>
Grid sample_grid(Label m, int k, Rng& rng) {
  if (k < 1 || m < k) throw GraphError("random grid needs m >= k >= 1");
  std::set<Label> chosen;
  const Label universe = m - 1;
  for (Label j = universe - (k - 1) + 1; j <= universe; ++j) {
    std::uniform_int_distribution<Label> pick(1, j);
    Label x = pick(rng);
    if (!chosen.insert(x).second) chosen.insert(j);
  }
  std::vector<Label> t{0};
  t.insert(t.end(), chosen.begin(), chosen.end());
  t.push_back(m);
  return Grid(std::move(t));
}

/// alive[i] says whether edge i of the host belongs to the subgraph.
using EdgeMask = std::vector<char>;

inline EdgeMask full_mask(const EdgeOrderedGraph& g) { return EdgeMask(g.edge_count(), 1); }

/// j-degrees, vertex weights and heavy vertices of a subgraph under a grid.
struct WeightProfile {
  int k = 0;
  int ell = 0;
  std::vector<int> j_degrees;  // row-major n x k
  std::vector<int> weight;
  std::int64_t total = 0;
  std::vector<char> heavy;

  int j_degree(Vertex v, int j) const { return j_degrees[static_cast<std::size_t>(v) * k + (j - 1)]; }
  std::vector<Vertex> heavy_vertices() const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < heavy.size(); ++v) {
      if (heavy[v]) out.push_back(static_cast<Vertex>(v));
    }
    return out;
  }
};

/// Weights of the subgraph selected by mask. Requires labels 1..m and t_k = m.
inline WeightProfile classify(const EdgeOrderedGraph& g, const Grid& t, int ell, const EdgeMask& mask) {
  if (!g.labels_normalized()) throw GraphError("classify needs labels 1..m");
  t.check_against(g);
  if (mask.size() != g.edge_count()) throw GraphError("edge mask size mismatch");
  WeightProfile p;
  p.k = t.classes();
  p.ell = ell;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  p.j_degrees.assign(n * static_cast<std::size_t>(p.k), 0);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (!mask[i]) continue;
    const Edge& e = g.edge(i);
    int j = t.class_of(e.label);
    ++p.j_degrees[static_cast<std::size_t>(e.u) * p.k + (j - 1)];
    ++p.j_degrees[static_cast<std::size_t>(e.v) * p.k + (j - 1)];
  }
  p.weight.assign(n, 0);
  p.heavy.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto row = p.j_degrees.begin() + static_cast<std::ptrdiff_t>(v * p.k);
    p.weight[v] = *std::min_element(row, row + p.k);
    p.total += p.weight[v];
    p.heavy[v] = p.weight[v] >= ell;
  }
  return p;
}

inline WeightProfile classify(const EdgeOrderedGraph& g, const Grid& t, int ell) {
  return classify(g, t, ell, full_mask(g));
}

/// W_t(G) without the per-vertex bookkeeping.
inline std::int64_t graph_weight(const EdgeOrderedGraph& g, const Grid& t) {
  return classify(g, t, 0).total;
}

/// The weight threshold 2 * ell * (u + 1) * n above which a u-edge sub-pattern
/// is guaranteed a nice embedding.
inline std::int64_t weight_threshold(int ell, std::int64_t u, std::int64_t n) {
  return 2 * static_cast<std::int64_t>(ell) * (u + 1) * n;
}

/// W_t(G) for every 2-class grid (0, s, m), s = 1..m-1, in one sweep.
/// Entry s-1 holds the weight for threshold s.
inline std::vector<std::int64_t> two_class_weights(const EdgeOrderedGraph& g) {
  if (!g.labels_normalized()) throw GraphError("two_class_weights needs labels 1..m");
  const std::size_t m = g.edge_count();
  std::vector<int> low(static_cast<std::size_t>(g.vertex_count()), 0);
  std::int64_t total = 0;  // every vertex starts with weight min(0, deg) = 0
  std::vector<std::int64_t> out;
  if (m < 2) return out;
  out.reserve(m - 1);
  auto w = [&](Vertex v) { return std::min(low[v], g.degree(v) - low[v]); };
  for (std::size_t s = 1; s < m; ++s) {
    const Edge& e = g.edge(s - 1);
    total -= w(e.u) + w(e.v);
    ++low[e.u];
    ++low[e.v];
    total += w(e.u) + w(e.v);
    out.push_back(total);
  }
  return out;
}

}  // namespace eog
