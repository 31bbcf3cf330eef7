// eogtool: command-line front end for the eog library.
//
// Exit codes: 0 positive (contains, OCN-2, found, exact), 1 negative (avoids,
// not OCN-2, certificate only, diagnostic), 2 error, 3 budget exceeded.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eog/eog.hpp"
#include "eog/report.hpp"

namespace {

using namespace eog;

enum Exit { kPositive = 0, kNegative = 1, kError = 2, kBudget = 3 };

struct Global {
  std::string format = "text";
  std::uint64_t seed = 0;
  bool no_meta = false;
  int threads = 1;
};

std::string join(const std::vector<Vertex>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

std::string map_text(const Embedding& e) {
  std::ostringstream out;
  for (std::size_t i = 0; i < e.map.size(); ++i) out << (i ? " " : "") << i << "->" << e.map[i];
  return out.str();
}

class Printer {
 public:
  Printer(const Global& g, std::string command) : global_(g), command_(std::move(command)) {
    start_ = std::chrono::steady_clock::now();
  }

  void emit(Json body, const std::string& text) const {
    if (global_.format == "json") {
      Json out{{"command", command_}};
      for (auto& [key, value] : body.items()) out[key] = value;
      if (!global_.no_meta) out["meta"] = meta();
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << text;
      if (!global_.no_meta) {
        std::cout << "# elapsed_ms " << meta()["elapsed_ms"].get<double>() << ", "
                  << meta()["timestamp"].get<std::string>() << '\n';
      }
    }
  }

 private:
  Json meta() const {
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return {{"elapsed_ms", elapsed}, {"timestamp", stamp}, {"seed", global_.seed}};
  }

  const Global& global_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
};

int run_contains(const Global& g, const std::string& host_arg, const std::string& pattern_arg,
                 std::uint64_t budget) {
  Printer p(g, "contains");
  auto host = load_graph_argument(host_arg);
  auto pattern = load_graph_argument(pattern_arg);
  auto r = find_embedding(host, pattern, budget);
  Json body{{"status", r.status == SearchStatus::found    ? "contains"
                       : r.status == SearchStatus::absent ? "avoids"
                                                          : "budget_exceeded"},
            {"nodes", r.nodes}};
  std::ostringstream text;
  if (r.status == SearchStatus::found) {
    body["embedding"] = embedding_json(*r.embedding);
    text << "contains\nmap " << map_text(*r.embedding) << '\n';
  } else {
    text << (r.status == SearchStatus::absent ? "avoids" : "budget exceeded") << '\n';
  }
  p.emit(body, text.str());
  if (r.status == SearchStatus::budget_exceeded) return kBudget;
  return r.status == SearchStatus::found ? kPositive : kNegative;
}

int run_classify(const Global& g, const std::string& pattern_arg) {
  Printer p(g, "classify");
  auto h = load_graph_argument(pattern_arg);
  auto close = close_vertices(h);
  Json body{{"close_vertices", close}, {"forest", is_forest(h)}};
  std::ostringstream text;
  text << "close vertices: " << join(close) << '\n';
  auto w = ocn2_witness(h);
  body["ocn2"] = w.has_value();
  if (!w) {
    text << "OCN-2: no\n";
    p.emit(body, text.str());
    return kNegative;
  }
  auto f = certify(h);
  body["witness"] = witness_json(f);
  text << "OCN-2: yes\n"
       << "close side: " << join(f.witness.close_side) << '\n'
       << "other side: " << join(f.witness.other_side) << '\n'
       << "left order: " << join(f.witness.left_order) << '\n'
       << "k = " << f.k << ", ell = " << f.ell << (f.is_star ? ", star" : "") << '\n';
  p.emit(body, text.str());
  return kPositive;
}

std::string slice_table(const StepAudit& a) {
  std::ostringstream out;
  out << "slice  edges  vertices  avg_degree\n";
  for (const Slice& s : a.slices) {
    out << s.index << "  " << s.edges.size() << "  " << s.vertex_count << "  " << to_string(s.average_degree)
        << (s.index == a.chosen_slice ? "  *" : "") << '\n';
  }
  return out.str();
}

int run_step(const Global& g, const std::string& host_arg, const std::string& pattern_arg, StepOptions options) {
  Printer p(g, "step");
  auto host = load_graph_argument(host_arg);
  auto h = certify(load_graph_argument(pattern_arg));
  options.seed = g.seed;
  auto o = increment_step(host, h, options);
  if (o.embedding && !verify_embedding(host, h.graph, *o.embedding)) throw std::logic_error("unverified embedding");
  const StepAudit& a = o.audit;
  std::ostringstream text;
  text << "k = " << a.params.k << ", ell = " << a.params.ell << ", m = " << a.params.m << ", n = " << a.params.n
       << ", d = " << to_string(a.params.d) << ", f = " << a.params.f.str() << '\n';
  if (o.kind != OutcomeKind::host_returned) {
    text << "tame " << a.cover.tame_count << ", wild " << a.cover.wild_count << '\n'
         << "G* edges " << a.gstar_edges << ", vertices " << a.gstar_vertices << '\n'
         << slice_table(a);
  }
  if (a.grid_search) {
    text << "grid search (" << a.grid_search->strategy << "): " << a.grid_search->grids_examined
         << " grids, best weight " << a.grid_search->best_weight << ", threshold " << a.grid_search->threshold
         << '\n';
  }
  text << "outcome: " << to_string(o.kind) << '\n';
  if (o.kind == OutcomeKind::dense_subgraph || o.kind == OutcomeKind::host_returned) {
    text << "subgraph: " << o.subgraph.vertex_count() << " vertices, " << o.subgraph.edge_count()
         << " edges, average degree " << to_string(o.average_degree) << '\n';
  }
  if (o.embedding) text << "map " << map_text(*o.embedding) << '\n';
  if (!o.diagnostic.empty()) text << "diagnostic: " << o.diagnostic << '\n';
  p.emit(outcome_json(o), text.str());
  return o.kind == OutcomeKind::diagnostic ? kNegative : kPositive;
}

int run_drive(const Global& g, const std::string& host_arg, const std::string& pattern_arg, DriverOptions options) {
  Printer p(g, "drive");
  auto host = load_graph_argument(host_arg);
  auto h = certify(load_graph_argument(pattern_arg));
  options.step.seed = g.seed;
  auto r = find_or_certify(host, h, options);
  std::ostringstream text;
  text << "iter  m  n  d  f  outcome\n";
  for (const TraceEntry& e : r.trace.entries) {
    text << e.iteration << "  " << e.m << "  " << e.n << "  " << to_string(e.d) << "  " << e.f.str() << "  "
         << to_string(e.outcome) << '\n';
  }
  if (!r.trace.verdict.empty()) text << "verdict: " << r.trace.verdict << '\n';
  text << "result: " << to_string(r.kind) << '\n';
  if (!r.source.empty()) text << "source: " << r.source << '\n';
  if (r.embedding) text << "map " << map_text(*r.embedding) << '\n';
  if (r.kind == DriveKind::density_certificate) {
    text << "final subgraph: " << r.final_subgraph.vertex_count() << " vertices, "
         << r.final_subgraph.edge_count() << " edges (not a proof of avoidance)\n";
  }
  p.emit(drive_json(r), text.str());
  switch (r.kind) {
    case DriveKind::found_embedding: return kPositive;
    case DriveKind::density_certificate: return kNegative;
    case DriveKind::budget_exhausted: return kBudget;
  }
  return kError;
}

int run_bound(const Global& g, std::int64_t n, int k, int ell) {
  Printer p(g, "bound");
  std::ostringstream text;
  Json body{{"n", n}, {"k", k}, {"ell", ell}};
  if (k == 1) {
    BigInt b = star_bound(n, ell - 1);
    body["bound"] = b.str();
    body["rule"] = "star";
    text << "star with " << ell - 1 << " edges: bound " << b.str() << '\n';
  } else {
    auto c = recursion_constants(k, ell);
    BigInt b = bound(n, k, ell);
    body["constants"] = constants_json(c);
    body["bound"] = b.str();
    text << "c1 in [" << c.c1.lo << ", " << c.c1.hi << "], c1^(k-1) = " << c.c1_power.str() << '\n'
         << "c2 = " << to_string(c.c2) << '\n'
         << "c3 = " << c.c3 << '\n'
         << "c4 = " << to_string(c.c4) << '\n'
         << "c5 in [" << c.c5.lo << ", " << c.c5.hi << "]\n"
         << "bound = " << b.str() << '\n';
  }
  p.emit(body, text.str());
  return kPositive;
}

int run_exmax(const Global& g, int n, const std::string& pattern_arg, ExmaxOptions options,
              const std::string& cache_flag) {
  Printer p(g, "exmax");
  auto pattern = load_graph_argument(pattern_arg);
  options.threads = g.threads;
  std::string cache_path = cache_flag;
  if (cache_path.empty()) {
    if (const char* env = std::getenv("EOG_CACHE")) cache_path = env;
  }
  const std::string key = canonical_form(pattern);
  std::ostringstream text;
  if (!cache_path.empty()) {
    ResultCache cache(cache_path);
    if (auto hit = cache.lookup(n, key)) {
      if (static_cast<int>(hit->witness.edge_count()) != hit->value || hit->witness.vertex_count() != n ||
          contains(hit->witness, pattern)) {
        throw std::runtime_error("cache entry fails re-verification: " + cache_path);
      }
      Json body{{"n", n}, {"pattern", key}, {"status", "exact"}, {"value", hit->value},
                {"witness", graph_json(hit->witness)}, {"cached", true}};
      text << "ex(" << n << ") = " << hit->value << " (cached)\nwitness\n" << serialize(hit->witness);
      p.emit(body, text.str());
      return kPositive;
    }
  }
  auto r = brute_force_ex(n, pattern, options);
  if (!cache_path.empty()) ResultCache(cache_path).append(r);
  Json body = exmax_json(r);
  body["cached"] = false;
  if (r.status == ExmaxStatus::exact) {
    text << "ex(" << n << ") = " << r.value << '\n';
  } else {
    text << "budget exceeded: " << r.lower_bound << " <= ex(" << n << ") < " << r.upper_bound << '\n';
  }
  for (const LevelRecord& l : r.levels) {
    text << "m = " << l.m << ": " << l.graphs << " graphs, " << l.nodes << " nodes, "
         << (l.avoider_found ? "avoider" : "refuted") << '\n';
  }
  if (r.witness) text << "witness\n" << serialize(*r.witness);
  p.emit(body, text.str());
  return r.status == ExmaxStatus::exact ? kPositive : kBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-ordered graph toolkit"};
  app.require_subcommand(1);
  Global global;
  app.add_option("--format", global.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", global.seed, "Seed for all sampling");
  app.add_flag("--no-meta", global.no_meta, "Omit timing and timestamp from reports");
  app.add_option("--threads", global.threads, "Worker thread cap")->check(CLI::Range(1, 256));

  std::string host, pattern;
  std::uint64_t budget = kUnlimited;
  auto* contains_cmd = app.add_subcommand("contains", "Search for an order-preserving copy of a pattern");
  contains_cmd->add_option("host", host, "Host EOG file")->required();
  contains_cmd->add_option("pattern", pattern, "Pattern EOG file or P-notation")->required();
  contains_cmd->add_option("--budget", budget, "Search node cap");

  auto* classify_cmd = app.add_subcommand("classify", "Close vertices and order chromatic number 2 witness");
  classify_cmd->add_option("pattern", pattern, "Pattern EOG file or P-notation")->required();

  StepOptions step;
  std::int64_t f_override = -1;
  auto* step_cmd = app.add_subcommand("step", "One density-increment step with its audit");
  step_cmd->add_option("host", host)->required();
  step_cmd->add_option("pattern", pattern)->required();
  step_cmd->add_option("--grid-cap", step.grid_cap, "Enumerate all grids up to this count");
  step_cmd->add_option("--grid-samples", step.grid_samples, "Sampled grids above the cap");
  step_cmd->add_option("--attempts", step.embed_attempts, "Heaviest grids tried for an embedding");
  step_cmd->add_option("--f", f_override, "Override the interval length f");

  DriverOptions drive;
  auto* drive_cmd = app.add_subcommand("drive", "Iterate the density increment and search the final subgraph");
  drive_cmd->add_option("host", host)->required();
  drive_cmd->add_option("pattern", pattern)->required();
  drive_cmd->add_option("--grid-cap", drive.step.grid_cap);
  drive_cmd->add_option("--grid-samples", drive.step.grid_samples);
  drive_cmd->add_option("--max-iterations", drive.max_iterations);
  drive_cmd->add_option("--budget", drive.search_budget, "Node cap for each exact search");

  std::int64_t n = 0;
  int k = 0, ell = 0;
  auto* bound_cmd = app.add_subcommand("bound", "Recursion constants and the upper bound on ex(n, H)");
  bound_cmd->add_option("n", n)->required()->check(CLI::PositiveNumber);
  bound_cmd->add_option("k", k)->required()->check(CLI::PositiveNumber);
  bound_cmd->add_option("ell", ell)->required()->check(CLI::PositiveNumber);

  ExmaxOptions exmax;
  int exmax_n = 0;
  std::string cache;
  auto* exmax_cmd = app.add_subcommand("exmax", "Exact ex(n, H) by exhaustive search");
  exmax_cmd->add_option("n", exmax_n)->required();
  exmax_cmd->add_option("pattern", pattern)->required();
  exmax_cmd->add_option("--budget", exmax.budget, "Ordering-search node cap");
  exmax_cmd->add_flag("--allow-long", exmax.allow_long, "Permit n = 7");
  exmax_cmd->add_option("--cache", cache, "Result cache file (overrides EOG_CACHE)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*contains_cmd) return run_contains(global, host, pattern, budget);
    if (*classify_cmd) return run_classify(global, pattern);
    if (*step_cmd) {
      if (f_override >= 0) step.f_override = BigInt(f_override);
      return run_step(global, host, pattern, step);
    }
    if (*drive_cmd) return run_drive(global, host, pattern, drive);
    if (*bound_cmd) return run_bound(global, n, k, ell);
    if (*exmax_cmd) return run_exmax(global, exmax_n, pattern, exmax, cache);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
