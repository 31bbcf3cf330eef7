#pragma once

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eog/graph.hpp"

namespace eog {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& what) {
  throw GraphError("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Reads the EOG text format:
///
///     n m
///     u v label      (m lines, 0-based vertices)
///
/// '#' starts a comment; blank lines are ignored. Errors carry the line number.
inline EdgeOrderedGraph parse(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!detail::split_ws(line).empty()) lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw GraphError("line 1: missing header \"n m\"");

  auto header = detail::split_ws(lines[0].second);
  long long n = 0;
  long long m = 0;
  if (header.size() != 2 || !detail::parse_int(header[0], n) || !detail::parse_int(header[1], m) ||
      n < 0 || m < 0 || n > (1LL << 30)) {
    detail::fail_at(lines[0].first, "malformed header, expected \"n m\"");
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    std::size_t where = lines.size() - 1 > static_cast<std::size_t>(m)
                            ? lines[static_cast<std::size_t>(m) + 1].first
                            : lines.back().first;
    detail::fail_at(where, "expected " + std::to_string(m) + " edge lines, found " +
                               std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<std::pair<Vertex, Vertex>> pairs;
  std::set<Label> labels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [where, line] = lines[i];
    auto tok = detail::split_ws(line);
    long long u = 0;
    long long v = 0;
    Label label = 0;
    if (tok.size() != 3 || !detail::parse_int(tok[0], u) || !detail::parse_int(tok[1], v) ||
        !detail::parse_int(tok[2], label)) {
      detail::fail_at(where, "malformed edge line, expected \"u v label\"");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) detail::fail_at(where, "vertex out of range");
    if (u == v) detail::fail_at(where, "self-loop");
    const auto a = static_cast<Vertex>(u);
    const auto b = static_cast<Vertex>(v);
    const std::pair<Vertex, Vertex> key{std::min(a, b), std::max(a, b)};
    if (!pairs.insert(key).second) detail::fail_at(where, "duplicate edge");
    if (!labels.insert(label).second) detail::fail_at(where, "duplicate label");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), label});
  }
  return EdgeOrderedGraph(static_cast<int>(n), std::move(edges));
}

/// Inverse of parse: header, then edges sorted by label with u < v.
inline std::string serialize(const EdgeOrderedGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.label << '\n';
  return out.str();
}

inline EdgeOrderedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

inline bool looks_like_path_notation(std::string_view s) {
  return s.size() >= 3 && s[0] == 'P' && s.find('^') != std::string_view::npos;
}

/// Path notation "P5^1342": a 5-vertex path whose edges, read along the path,
/// carry labels 1,3,4,2. Labels >= 10 need the comma form "P11^1,10,2,...".
/// Braces around the label list are accepted ("P5^{1342}").
inline EdgeOrderedGraph parse_path_notation(std::string_view s) {
  const std::string text(s);
  auto bad = [&](const std::string& why) -> GraphError {
    return GraphError("path notation \"" + text + "\": " + why);
  };
  if (!looks_like_path_notation(s)) throw bad("expected P<k>^<labels>");
  std::size_t caret = s.find('^');
  int k = 0;
  if (!detail::parse_int(s.substr(1, caret - 1), k) || k < 2) throw bad("bad vertex count");
  std::string_view body = s.substr(caret + 1);
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
    body = body.substr(1, body.size() - 2);
  }

  std::vector<Label> labels;
  if (body.find(',') != std::string_view::npos) {
    while (true) {
      std::size_t comma = body.find(',');
      Label value = 0;
      if (!detail::parse_int(body.substr(0, comma), value)) throw bad("bad label");
      labels.push_back(value);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
  } else {
    for (char c : body) {
      if (c < '0' || c > '9') throw bad("bad label digit");
      labels.push_back(c - '0');
    }
  }
  if (static_cast<int>(labels.size()) != k - 1) {
    throw bad("length mismatch, " + std::to_string(k) + " vertices need " + std::to_string(k - 1) +
              " labels");
  }
  if (std::set<Label>(labels.begin(), labels.end()).size() != labels.size()) {
    throw bad("repeated label");
  }
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1, labels[static_cast<std::size_t>(i)]});
  return EdgeOrderedGraph(k, std::move(edges));
}

/// A pattern argument is either P-notation or a path to an EOG file.
inline EdgeOrderedGraph load_graph_argument(const std::string& arg) {
  if (looks_like_path_notation(arg)) return parse_path_notation(arg);
  return read_graph_file(arg);
}

}  // namespace eog
