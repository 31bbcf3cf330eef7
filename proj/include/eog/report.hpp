#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eog/bounds.hpp"
#include "eog/driver.hpp"
#include "eog/exmax.hpp"
#include "eog/increment.hpp"
#include "eog/io.hpp"
#include "eog/pattern.hpp"
#include "eog/weights.hpp"

// Structured reports. Rationals and big integers are written as decimal
// strings ("7/2", "53600") so nothing is rounded.

namespace eog {

using Json = nlohmann::ordered_json;

inline Json edges_json(const EdgeOrderedGraph& g) {
  Json out = Json::array();
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v, e.label});
  return out;
}

inline Json graph_json(const EdgeOrderedGraph& g) {
  return {{"n", g.vertex_count()}, {"m", g.edge_count()}, {"edges", edges_json(g)}};
}

inline Json embedding_json(const Embedding& e) { return Json(e.map); }

inline Json witness_json(const ForbiddenForest& f) {
  return {{"close_side", f.witness.close_side},
          {"other_side", f.witness.other_side},
          {"left_order", f.witness.left_order},
          {"k", f.k},
          {"ell", f.ell},
          {"star", f.is_star}};
}

inline Json params_json(const StepParams& p) {
  return {{"k", p.k}, {"ell", p.ell}, {"m", p.m}, {"n", p.n}, {"d", to_string(p.d)}, {"f", p.f.str()}};
}

inline Json grid_search_json(const GridSearchAudit& a) {
  return {{"strategy", a.strategy},        {"grids_examined", a.grids_examined}, {"threshold", a.threshold},
          {"best_weight", a.best_weight},  {"best_grid", a.best_grid},           {"attempts", a.attempts},
          {"embedding_grid", a.embedding_grid}};
}

inline Json audit_json(const StepAudit& a) {
  Json slices = Json::array();
  for (const Slice& s : a.slices) {
    slices.push_back({{"j", s.index},
                      {"edges", s.edges.size()},
                      {"vertices", s.vertex_count},
                      {"average_degree", to_string(s.average_degree)}});
  }
  Json out{{"params", params_json(a.params)},
           {"tame", a.cover.tame_count},
           {"wild", a.cover.wild_count},
           {"gstar_edges", a.gstar_edges},
           {"gstar_vertices", a.gstar_vertices},
           {"slices", slices},
           {"chosen_slice", a.chosen_slice}};
  if (a.grid_search) out["grid_search"] = grid_search_json(*a.grid_search);
  return out;
}

inline Json outcome_json(const IncrementOutcome& o) {
  Json out{{"outcome", to_string(o.kind)}};
  if (o.kind == OutcomeKind::dense_subgraph || o.kind == OutcomeKind::host_returned) {
    out["subgraph"] = graph_json(o.subgraph);
    out["vertex_map"] = o.vertex_map;
    out["average_degree"] = to_string(o.average_degree);
  }
  if (o.embedding) out["embedding"] = embedding_json(*o.embedding);
  if (!o.diagnostic.empty()) out["diagnostic"] = o.diagnostic;
  out["audit"] = audit_json(o.audit);
  return out;
}

inline Json trace_json(const RecursionTrace& t) {
  Json entries = Json::array();
  for (const TraceEntry& e : t.entries) {
    entries.push_back({{"iteration", e.iteration},
                       {"m", e.m},
                       {"n", e.n},
                       {"d", to_string(e.d)},
                       {"f", e.f.str()},
                       {"outcome", to_string(e.outcome)}});
  }
  return {{"entries", entries}, {"verdict", t.verdict}};
}

inline Json drive_json(const DriveResult& r) {
  Json out{{"result", to_string(r.kind)}};
  if (r.embedding) out["embedding"] = embedding_json(*r.embedding);
  if (!r.source.empty()) out["source"] = r.source;
  out["trace"] = trace_json(r.trace);
  out["final_subgraph"] = graph_json(r.final_subgraph);
  out["final_map"] = r.final_map;
  if (r.kind == DriveKind::density_certificate) out["conclusive"] = false;
  return out;
}

inline Json constants_json(const RecursionConstants& c) {
  return {{"k", c.k},
          {"ell", c.ell},
          {"c1_power", c.c1_power.str()},
          {"c1", {c.c1.lo, c.c1.hi}},
          {"c2", to_string(c.c2)},
          {"c3", c.c3},
          {"c4", to_string(c.c4)},
          {"c5", {c.c5.lo, c.c5.hi}}};
}

inline Json exmax_json(const ExmaxResult& r) {
  Json levels = Json::array();
  for (const LevelRecord& l : r.levels) {
    levels.push_back({{"m", l.m}, {"graphs", l.graphs}, {"nodes", l.nodes}, {"avoider", l.avoider_found}});
  }
  Json out{{"n", r.n}, {"pattern", r.pattern_key}};
  if (r.status == ExmaxStatus::exact) {
    out["status"] = "exact";
    out["value"] = r.value;
  } else {
    out["status"] = "budget_exceeded";
    out["lower_bound"] = r.lower_bound;
    out["upper_bound"] = r.upper_bound;
  }
  if (r.witness) out["witness"] = graph_json(*r.witness);
  out["levels"] = levels;
  out["nodes"] = r.nodes;
  return out;
}

}  // namespace eog
