#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "eog/containment.hpp"
#include "eog/io.hpp"
#include "eog/isomorphism.hpp"

namespace eog {

inline constexpr int kMaxExactVertices = 6;
inline constexpr int kMaxLongVertices = 7;

namespace detail {

/// Unlabeled simple graphs on n vertices, one per isomorphism class, grouped by
/// edge count. A graph is a bit code over vertex pairs; the class
/// representative is the permutation image with the largest code. Deleting the
/// lowest set bit of a representative gives a representative, so every class
/// is reached exactly once by adding bits below the lowest set bit
/// (orderly generation).
class GraphCatalog {
 public:
  explicit GraphCatalog(int n) : n_(n) {
    if (n < 1 || n > 8) throw std::invalid_argument("graph catalog supports 1..8 vertices");
    bit_.assign(static_cast<std::size_t>(n * n), -1);
    for (int b = 1; b < n; ++b) {
      for (int a = 0; a < b; ++a) {
        bit_[a * n + b] = bit_[b * n + a] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(a, b);
      }
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    by_edges_.resize(pairs_.size() + 1);
    std::vector<std::uint32_t> frontier{0};
    by_edges_[0].push_back(0);
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t code : frontier) {
        int low = code == 0 ? static_cast<int>(pairs_.size()) : std::countr_zero(code);
        for (int s = 0; s < low; ++s) {
          std::uint32_t child = code | (1u << s);
          if (is_canonical(child)) next.push_back(child);
        }
      }
      for (std::uint32_t c : next) by_edges_[static_cast<std::size_t>(std::popcount(c))].push_back(c);
      frontier = std::move(next);
    }
    for (auto& level : by_edges_) std::sort(level.rbegin(), level.rend());
  }

  int vertices() const { return n_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::uint32_t>& with_edges(int m) const { return by_edges_.at(static_cast<std::size_t>(m)); }
  std::pair<int, int> pair(int bit) const { return pairs_[static_cast<std::size_t>(bit)]; }

  std::uint32_t permuted(std::uint32_t code, const std::vector<int>& perm) const {
    std::uint32_t out = 0;
    for (std::uint32_t rest = code; rest; rest &= rest - 1) {
      auto [a, b] = pairs_[static_cast<std::size_t>(std::countr_zero(rest))];
      out |= 1u << bit_[perm[a] * n_ + perm[b]];
    }
    return out;
  }

  bool is_canonical(std::uint32_t code) const {
    for (const auto& perm : perms_) {
      if (permuted(code, perm) > code) return false;
    }
    return true;
  }

  /// Automorphisms of the graph, as permutations of its edge list (edges in
  /// increasing bit order).
  std::vector<std::vector<int>> edge_automorphisms(std::uint32_t code) const {
    std::vector<int> bits;
    for (std::uint32_t rest = code; rest; rest &= rest - 1) bits.push_back(std::countr_zero(rest));
    std::vector<int> local(pairs_.size(), -1);
    for (std::size_t i = 0; i < bits.size(); ++i) local[static_cast<std::size_t>(bits[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> out;
    for (const auto& perm : perms_) {
      if (permuted(code, perm) != code) continue;
      std::vector<int> image(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) {
        auto [a, b] = pairs_[static_cast<std::size_t>(bits[i])];
        image[i] = local[static_cast<std::size_t>(bit_[perm[a] * n_ + perm[b]])];
      }
      out.push_back(std::move(image));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  int n_;
  std::vector<int> bit_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<std::uint32_t>> by_edges_;
};

struct SharedBudget {
  std::atomic<std::uint64_t> used{0};
  std::uint64_t limit = kUnlimited;
  bool charge() { return used.fetch_add(1, std::memory_order_relaxed) < limit; }
};

struct BudgetOut {};

// Edge orderings of one underlying graph, built by appending the next-largest
// label. A prefix is dropped once it contains the pattern (every extension
// would too), or when an automorphism maps it to a lexicographically smaller
// prefix (only the least ordering of each automorphism orbit is visited).
class OrderingSearch {
 public:
  OrderingSearch(int n, std::vector<std::pair<int, int>> edges, std::vector<std::vector<int>> automorphisms,
                 const EdgeOrderedGraph& pattern, SharedBudget& budget)
      : n_(n),
        edges_(std::move(edges)),
        autos_(std::move(automorphisms)),
        pattern_(normalize_labels(pattern)),
        budget_(budget),
        labels_(static_cast<std::size_t>(n * n), 0),
        used_edge_(edges_.size(), 0),
        pmap_(static_cast<std::size_t>(pattern.vertex_count()), kUnmapped),
        hused_(static_cast<std::size_t>(n), 0) {}

  /// Label sequence (edge index per label) of the first avoiding ordering, if any.
  std::optional<std::vector<int>> run() {
    if (pattern_.vertex_count() > n_) {
      std::vector<int> order(edges_.size());
      std::iota(order.begin(), order.end(), 0);
      return order;
    }
    std::vector<int> stabilizer(autos_.size());
    std::iota(stabilizer.begin(), stabilizer.end(), 0);
    if (extend(stabilizer)) return sequence_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  int& label(int a, int b) { return labels_[static_cast<std::size_t>(a * n_ + b)]; }
  int at(int a, int b) const { return labels_[static_cast<std::size_t>(a * n_ + b)]; }

  bool extend(const std::vector<int>& stabilizer) {
    const auto j = sequence_.size();
    if (j == edges_.size()) return true;
    std::vector<int> next_stabilizer;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      if (used_edge_[static_cast<std::size_t>(e)]) continue;
      next_stabilizer.clear();
      bool smaller_image = false;
      for (int a : stabilizer) {
        int image = autos_[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)];
        if (image < e) {
          smaller_image = true;
          break;
        }
        if (image == e) next_stabilizer.push_back(a);
      }
      if (smaller_image) continue;
      ++nodes_;
      if (!budget_.charge()) throw BudgetOut{};

      auto [a, b] = edges_[static_cast<std::size_t>(e)];
      const int lab = static_cast<int>(j) + 1;
      label(a, b) = label(b, a) = lab;
      used_edge_[static_cast<std::size_t>(e)] = 1;
      sequence_.push_back(e);
      bool pruned = j + 1 >= pattern_.edge_count() && contains_with_newest(a, b, lab);
      if (!pruned && extend(next_stabilizer)) return true;
      sequence_.pop_back();
      used_edge_[static_cast<std::size_t>(e)] = 0;
      label(a, b) = label(b, a) = 0;
    }
    return false;
  }

  // Does the prefix contain the pattern with its last edge on the newest host edge {x, y}?
  // Earlier prefixes were pattern-free, so that is the only way it can appear now.
  bool contains_with_newest(int x, int y, int newest) {
    const Edge& last = pattern_.edge(pattern_.edge_count() - 1);
    for (int flip = 0; flip < 2; ++flip) {
      int hx = flip ? y : x;
      int hy = flip ? x : y;
      pmap_[last.u] = hx;
      pmap_[last.v] = hy;
      hused_[hx] = hused_[hy] = 1;
      bool found = match(0, 0, newest);
      hused_[hx] = hused_[hy] = 0;
      pmap_[last.u] = pmap_[last.v] = kUnmapped;
      if (found) return true;
    }
    return false;
  }

  bool match(std::size_t idx, int previous, int newest) {
    if (idx + 1 == pattern_.edge_count()) return true;  // the last edge is already placed
    const Edge& pe = pattern_.edge(idx);
    Vertex a = pe.u;
    Vertex b = pe.v;
    if (pmap_[a] == kUnmapped && pmap_[b] != kUnmapped) std::swap(a, b);
    auto ok = [&](int lab) { return lab > previous && lab < newest; };
    if (pmap_[a] != kUnmapped && pmap_[b] != kUnmapped) {
      int lab = at(pmap_[a], pmap_[b]);
      return ok(lab) && match(idx + 1, lab, newest);
    }
    auto try_pair = [&](int x, int y) {
      int lab = at(x, y);
      if (!ok(lab)) return false;
      bool new_a = pmap_[a] == kUnmapped;
      if (new_a) pmap_[a] = x, hused_[x] = 1;
      pmap_[b] = y;
      hused_[y] = 1;
      bool found = match(idx + 1, lab, newest);
      pmap_[b] = kUnmapped;
      hused_[y] = 0;
      if (new_a) pmap_[a] = kUnmapped, hused_[x] = 0;
      return found;
    };
    if (pmap_[a] != kUnmapped) {
      for (int y = 0; y < n_; ++y) {
        if (!hused_[y] && try_pair(pmap_[a], y)) return true;
      }
      return false;
    }
    for (int x = 0; x < n_; ++x) {
      if (hused_[x]) continue;
      for (int y = 0; y < n_; ++y) {
        if (y != x && !hused_[y] && try_pair(x, y)) return true;
      }
    }
    return false;
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> autos_;
  EdgeOrderedGraph pattern_;
  SharedBudget& budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> labels_;
  std::vector<char> used_edge_;
  std::vector<int> sequence_;
  std::vector<Vertex> pmap_;
  std::vector<char> hused_;
};

inline EdgeOrderedGraph graph_from_sequence(int n, const std::vector<std::pair<int, int>>& edges,
                                            const std::vector<int>& sequence) {
  std::vector<Edge> out;
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    auto [a, b] = edges[static_cast<std::size_t>(sequence[j])];
    out.push_back({a, b, static_cast<Label>(j + 1)});
  }
  return EdgeOrderedGraph(n, std::move(out));
}

inline std::vector<std::pair<int, int>> edges_of(const GraphCatalog& catalog, std::uint32_t code) {
  std::vector<std::pair<int, int>> out;
  for (std::uint32_t rest = code; rest; rest &= rest - 1) out.push_back(catalog.pair(std::countr_zero(rest)));
  return out;
}

struct LevelOutcome {
  bool budget_exceeded = false;
  std::optional<EdgeOrderedGraph> avoider;
  std::uint64_t graphs = 0;
  std::uint64_t nodes = 0;
};

// Searches every catalog graph with m edges; the avoider reported is the one
// from the earliest catalog graph, independent of the thread schedule.
inline LevelOutcome search_level(const GraphCatalog& catalog, int m, const EdgeOrderedGraph& pattern,
                                 SharedBudget& budget, int threads) {
  const auto& codes = catalog.with_edges(m);
  LevelOutcome out;
  std::vector<std::optional<EdgeOrderedGraph>> found(codes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_found{codes.size()};
  std::atomic<bool> out_of_budget{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> graphs{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= codes.size() || i > first_found.load() || out_of_budget.load()) return;
      auto edges = edges_of(catalog, codes[i]);
      OrderingSearch search(catalog.vertices(), edges, catalog.edge_automorphisms(codes[i]), pattern, budget);
      try {
        auto seq = search.run();
        if (seq) {
          found[i] = graph_from_sequence(catalog.vertices(), edges, *seq);
          std::size_t cur = first_found.load();
          while (i < cur && !first_found.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (const BudgetOut&) {
        out_of_budget = true;
      }
      nodes += search.nodes();
      ++graphs;
    }
  };
  const int count = std::max(1, threads);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  out.nodes = nodes;
  out.graphs = graphs;
  if (first_found.load() < codes.size()) {
    out.avoider = found[first_found.load()];
  } else if (out_of_budget) {
    out.budget_exceeded = true;
  }
  return out;
}

inline void check_size(int n, bool allow_long) {
  if (n < 1) throw std::invalid_argument("need at least one vertex");
  int cap = allow_long ? kMaxLongVertices : kMaxExactVertices;
  if (n > cap) {
    throw std::invalid_argument("exhaustive search limited to n <= " + std::to_string(cap) +
                                (allow_long ? "" : " (n = 7 needs the long-running flag)"));
  }
}

}  // namespace detail

struct ExmaxOptions {
  std::uint64_t budget = 4'000'000'000;  // ordering-search nodes across the whole run
  bool allow_long = false;               // permits n = 7
  int threads = 1;
};

struct AvoiderResult {
  SearchStatus status = SearchStatus::absent;  // found: an avoiding graph exists
  std::optional<EdgeOrderedGraph> graph;
  std::uint64_t graphs = 0;
  std::uint64_t nodes = 0;
};

/// An n-vertex, m-edge edge-ordered graph avoiding the pattern, or absent once
/// every underlying graph and every ordering (up to symmetry) was refuted.
inline AvoiderResult avoider_exists(int n, int m, const EdgeOrderedGraph& pattern,
                                    const ExmaxOptions& options = {}) {
  detail::require_edges(pattern);
  detail::check_size(n, options.allow_long);
  if (m < 0 || m > n * (n - 1) / 2) throw std::invalid_argument("edge count out of range");
  detail::GraphCatalog catalog(n);
  detail::SharedBudget budget;
  budget.limit = options.budget;
  auto level = detail::search_level(catalog, m, pattern, budget, options.threads);
  AvoiderResult out;
  out.graphs = level.graphs;
  out.nodes = level.nodes;
  if (level.avoider) {
    if (contains(*level.avoider, pattern)) throw std::logic_error("avoider rejected by the containment oracle");
    out.status = SearchStatus::found;
    out.graph = std::move(level.avoider);
  } else if (level.budget_exceeded) {
    out.status = SearchStatus::budget_exceeded;
  }
  return out;
}

enum class ExmaxStatus { exact, budget_exceeded };

struct LevelRecord {
  int m = 0;
  std::uint64_t graphs = 0;
  std::uint64_t nodes = 0;
  bool avoider_found = false;
};

struct ExmaxResult {
  int n = 0;
  std::string pattern_key;  // canonical_form of the pattern
  ExmaxStatus status = ExmaxStatus::exact;
  int value = 0;            // exact value when status == exact
  int lower_bound = 0;      // best verified lower bound
  int upper_bound = 0;      // smallest m not yet refuted
  std::optional<EdgeOrderedGraph> witness;
  std::vector<LevelRecord> levels;  // refuted levels first, descending m
  std::uint64_t nodes = 0;
};

/// ex_<(n, pattern) by descending search over m from C(n,2): the first level
/// with an avoiding ordering gives the value; every level above it was refuted
/// exhaustively. The witness is re-verified by the containment oracle.
inline ExmaxResult brute_force_ex(int n, const EdgeOrderedGraph& pattern, const ExmaxOptions& options = {}) {
  detail::require_edges(pattern);
  detail::check_size(n, options.allow_long);
  if (n < 2) throw std::invalid_argument("brute_force_ex needs n >= 2");
  detail::GraphCatalog catalog(n);
  detail::SharedBudget budget;
  budget.limit = options.budget;

  ExmaxResult out;
  out.n = n;
  out.pattern_key = canonical_form(pattern);
  for (int m = catalog.pair_count(); m >= 0; --m) {
    auto level = detail::search_level(catalog, m, pattern, budget, options.threads);
    out.nodes += level.nodes;
    out.levels.push_back({m, level.graphs, level.nodes, level.avoider.has_value()});
    if (level.avoider) {
      if (contains(*level.avoider, pattern)) throw std::logic_error("witness rejected by the containment oracle");
      out.status = ExmaxStatus::exact;
      out.value = out.lower_bound = out.upper_bound = m;
      out.witness = std::move(level.avoider);
      return out;
    }
    if (level.budget_exceeded) {
      out.status = ExmaxStatus::budget_exceeded;
      out.lower_bound = 0;
      out.upper_bound = m;
      return out;
    }
  }
  throw std::logic_error("the empty graph must avoid every pattern with an edge");
}

/// Append-only JSON-lines store of exact values keyed by (n, canonical pattern form).
class ResultCache {
 public:
  explicit ResultCache(std::string path) : path_(std::move(path)) {}

  struct Entry {
    int n = 0;
    std::string pattern_key;
    int value = 0;
    EdgeOrderedGraph witness;
  };

  std::optional<Entry> lookup(int n, const std::string& pattern_key) const {
    std::ifstream in(path_);
    std::string line;
    std::optional<Entry> hit;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      if (j.value("n", -1) != n || j.value("pattern", std::string{}) != pattern_key) continue;
      hit = Entry{n, pattern_key, j.at("value").get<int>(), parse(j.at("witness").get<std::string>())};
    }
    return hit;
  }

  void append(const ExmaxResult& r) const {
    if (r.status != ExmaxStatus::exact || !r.witness) return;
    nlohmann::json j{{"n", r.n}, {"pattern", r.pattern_key}, {"value", r.value}, {"witness", serialize(*r.witness)}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw GraphError("cannot write cache " + path_);
    out << j.dump() << '\n';
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace eog
