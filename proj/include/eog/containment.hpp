#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

/// Pattern vertex -> host vertex. Entries may be kUnmapped only for partial
/// (sub-pattern) embeddings.
struct Embedding {
  std::vector<Vertex> map;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

enum class SearchStatus { found, absent, budget_exceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<Embedding> embedding;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Checks injectivity, edge images and label order. Every pattern vertex must be mapped.
inline bool verify_embedding(const EdgeOrderedGraph& host, const EdgeOrderedGraph& pattern,
                             const Embedding& e) {
  if (e.map.size() != static_cast<std::size_t>(pattern.vertex_count())) return false;
  std::vector<char> used(static_cast<std::size_t>(host.vertex_count()), 0);
  for (Vertex x : e.map) {
    if (x < 0 || x >= host.vertex_count() || used[x]) return false;
    used[x] = 1;
  }
  std::optional<Label> previous;
  for (const Edge& pe : pattern.edges()) {  // pattern edges come sorted by label
    auto he = host.find_edge(e.map[pe.u], e.map[pe.v]);
    if (!he) return false;
    Label image = host.edge(*he).label;
    if (previous && image <= *previous) return false;
    previous = image;
  }
  return true;
}

namespace detail {

struct BudgetExhausted {};

// Backtracking over pattern edges in increasing label order. Each placed edge
// must map to a host edge of higher rank than the previous one; host ranks are
// positions in host.edges(). Candidates are tried in increasing host id.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const EdgeOrderedGraph& host, const EdgeOrderedGraph& pattern,
                  std::uint64_t budget)
      : host_(host),
        pattern_(pattern),
        budget_(budget),
        map_(static_cast<std::size_t>(pattern.vertex_count()), kUnmapped),
        used_(static_cast<std::size_t>(host.vertex_count()), 0),
        remaining_(static_cast<std::size_t>(pattern.vertex_count()), 0) {
    for (Vertex p = 0; p < pattern.vertex_count(); ++p) remaining_[p] = pattern.degree(p);
  }

  SearchResult run() {
    SearchResult out;
    if (pattern_.vertex_count() > host_.vertex_count() ||
        pattern_.edge_count() > host_.edge_count()) {
      return out;
    }
    try {
      if (extend(0, -1)) {
        out.status = SearchStatus::found;
        out.embedding = Embedding{map_};
      }
    } catch (const BudgetExhausted&) {
      out.status = SearchStatus::budget_exceeded;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  // Host edges of x with rank > after.
  std::size_t later_edges(Vertex x, std::ptrdiff_t after) const {
    auto inc = host_.incident(x);
    auto it = std::upper_bound(inc.begin(), inc.end(), after, [](std::ptrdiff_t r, const Incidence& i) {
      return r < static_cast<std::ptrdiff_t>(i.edge);
    });
    return static_cast<std::size_t>(inc.end() - it);
  }

  // Every mapped pattern vertex needs enough later host edges for its unplaced edges.
  bool feasible(std::size_t placed, std::ptrdiff_t rank) const {
    if (pattern_.edge_count() - placed >
        host_.edge_count() - static_cast<std::size_t>(rank + 1)) {
      return false;
    }
    for (Vertex p = 0; p < pattern_.vertex_count(); ++p) {
      if (map_[p] != kUnmapped && remaining_[p] > 0 &&
          later_edges(map_[p], rank) < static_cast<std::size_t>(remaining_[p])) {
        return false;
      }
    }
    return true;
  }

  bool can_host(Vertex p, Vertex x) const { return !used_[x] && host_.degree(x) >= pattern_.degree(p); }

  bool place(std::size_t j, Vertex a, Vertex x, Vertex b, Vertex y, std::ptrdiff_t rank) {
    bool new_a = map_[a] == kUnmapped;
    bool new_b = map_[b] == kUnmapped;
    if (new_a) map_[a] = x, used_[x] = 1;
    if (new_b) map_[b] = y, used_[y] = 1;
    --remaining_[a];
    --remaining_[b];
    bool ok = feasible(j + 1, rank) && extend(j + 1, rank);
    if (ok) return true;
    ++remaining_[a];
    ++remaining_[b];
    if (new_a) map_[a] = kUnmapped, used_[x] = 0;
    if (new_b) map_[b] = kUnmapped, used_[y] = 0;
    return false;
  }

  bool extend(std::size_t j, std::ptrdiff_t previous_rank) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    if (j == pattern_.edge_count()) return map_isolated();
    const Edge& pe = pattern_.edge(j);
    Vertex a = pe.u;
    Vertex b = pe.v;
    if (map_[a] == kUnmapped && map_[b] != kUnmapped) std::swap(a, b);

    if (map_[a] != kUnmapped && map_[b] != kUnmapped) {
      auto he = host_.find_edge(map_[a], map_[b]);
      if (!he || static_cast<std::ptrdiff_t>(*he) <= previous_rank) return false;
      return place(j, a, map_[a], b, map_[b], static_cast<std::ptrdiff_t>(*he));
    }
    if (map_[a] != kUnmapped) {
      std::vector<std::pair<Vertex, std::size_t>> options;
      for (const Incidence& inc : host_.incident(map_[a])) {
        if (static_cast<std::ptrdiff_t>(inc.edge) > previous_rank && can_host(b, inc.neighbor)) {
          options.emplace_back(inc.neighbor, inc.edge);
        }
      }
      std::sort(options.begin(), options.end());
      for (auto [y, rank] : options) {
        if (place(j, a, map_[a], b, y, static_cast<std::ptrdiff_t>(rank))) return true;
      }
      return false;
    }
    for (Vertex x = 0; x < host_.vertex_count(); ++x) {
      if (!can_host(a, x)) continue;
      std::vector<std::pair<Vertex, std::size_t>> options;
      for (const Incidence& inc : host_.incident(x)) {
        if (static_cast<std::ptrdiff_t>(inc.edge) > previous_rank && can_host(b, inc.neighbor)) {
          options.emplace_back(inc.neighbor, inc.edge);
        }
      }
      std::sort(options.begin(), options.end());
      for (auto [y, rank] : options) {
        if (place(j, a, x, b, y, static_cast<std::ptrdiff_t>(rank))) return true;
      }
    }
    return false;
  }

  bool map_isolated() {
    Vertex next = 0;
    std::vector<Vertex> assigned;
    for (Vertex p = 0; p < pattern_.vertex_count(); ++p) {
      if (map_[p] != kUnmapped) continue;
      while (next < host_.vertex_count() && used_[next]) ++next;
      if (next == host_.vertex_count()) {
        for (Vertex q : assigned) used_[map_[q]] = 0, map_[q] = kUnmapped;
        return false;
      }
      map_[p] = next;
      used_[next] = 1;
      assigned.push_back(p);
    }
    return true;
  }

  const EdgeOrderedGraph& host_;
  const EdgeOrderedGraph& pattern_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::vector<int> remaining_;
};

inline void require_edges(const EdgeOrderedGraph& pattern) {
  if (pattern.edge_count() == 0) throw std::invalid_argument("pattern must have at least one edge");
}

}  // namespace detail

/// Budgeted containment search. The returned embedding is the first one in the
/// search order: pattern edges by increasing label, host candidates by increasing id,
/// pattern isolated vertices onto the lowest unused host ids.
inline SearchResult find_embedding(const EdgeOrderedGraph& host, const EdgeOrderedGraph& pattern,
                                   std::uint64_t max_nodes = kUnlimited) {
  detail::require_edges(pattern);
  return detail::EmbeddingSearch(host, pattern, max_nodes).run();
}

inline std::optional<Embedding> contains(const EdgeOrderedGraph& host,
                                         const EdgeOrderedGraph& pattern) {
  return find_embedding(host, pattern).embedding;
}

/// Definitional check: tries every injective vertex map in lexicographic order.
/// Refuses (budget_exceeded) when the number of injections exceeds max_injections.
inline SearchResult contains_exhaustive(const EdgeOrderedGraph& host,
                                        const EdgeOrderedGraph& pattern,
                                        std::uint64_t max_injections = 50'000'000) {
  detail::require_edges(pattern);
  SearchResult out;
  const int hn = host.vertex_count();
  const int pn = pattern.vertex_count();
  if (pn > hn) return out;
  std::uint64_t count = 1;
  for (int i = 0; i < pn; ++i) {
    std::uint64_t factor = static_cast<std::uint64_t>(hn - i);
    if (count > max_injections / factor) {
      out.status = SearchStatus::budget_exceeded;
      return out;
    }
    count *= factor;
  }

  Embedding e{std::vector<Vertex>(static_cast<std::size_t>(pn), kUnmapped)};
  std::vector<char> used(static_cast<std::size_t>(hn), 0);
  auto rec = [&](auto&& self, int p) -> bool {
    if (p == pn) {
      ++out.nodes;
      return verify_embedding(host, pattern, e);
    }
    for (Vertex x = 0; x < hn; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      e.map[p] = x;
      if (self(self, p + 1)) return true;
      used[x] = 0;
    }
    e.map[p] = kUnmapped;
    return false;
  };
  if (rec(rec, 0)) {
    out.status = SearchStatus::found;
    out.embedding = e;
  }
  return out;
}

}  // namespace eog
