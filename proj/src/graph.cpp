// Copyright 2026 The tdham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdham/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace tdham {

GraphParseError::GraphParseError(std::size_t line, const std::string& what)
    : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adjacency_(n), incident_ids_(n) {
  if (n < 0) throw GraphError("negative vertex count");
  edges_.reserve(edges.size());
  for (const Edge& raw : edges) {
    if (raw.u < 0 || raw.u >= n || raw.v < 0 || raw.v >= n) {
      throw GraphError("edge " + std::to_string(raw.u) + " " + std::to_string(raw.v) +
                       ": vertex id out of range");
    }
    if (raw.u == raw.v) throw GraphError("self-loop at vertex " + std::to_string(raw.u));
    edges_.push_back(make_edge(raw.u, raw.v));
  }

  std::vector<int> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return edges_[a] < edges_[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Edge& e = edges_[order[i]];
    if (e == edges_[order[i - 1]]) {
      throw GraphError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
  std::vector<std::vector<std::pair<Vertex, int>>> incident(n);
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    incident[edges_[id].u].emplace_back(edges_[id].v, id);
    incident[edges_[id].v].emplace_back(edges_[id].u, id);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(incident[v].begin(), incident[v].end());
    for (auto [w, id] : incident[v]) {
      adjacency_[v].push_back(w);
      incident_ids_[v].push_back(id);
    }
  }
}

bool Graph::adjacent(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

std::optional<int> Graph::edge_id(Vertex a, Vertex b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) return std::nullopt;
  const auto& list = adjacency_[a];
  auto it = std::lower_bound(list.begin(), list.end(), b);
  if (it == list.end() || *it != b) return std::nullopt;
  return incident_ids_[a][it - list.begin()];
}

std::string Graph::serialize() const {
  std::ostringstream out;
  out << n_ << ' ' << edges_.size() << '\n';
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

long long parse_int(std::string_view field, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw GraphParseError(line_no, "malformed integer '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  long long n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == 'c') continue;
    if (fields.size() != 2) throw GraphParseError(line_no, "expected two integers");
    long long a = parse_int(fields[0], line_no);
    long long b = parse_int(fields[1], line_no);

    if (n < 0) {
      if (a < 0 || b < 0) throw GraphParseError(line_no, "negative count in header");
      n = a;
      m = b;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) {
      throw GraphParseError(line_no, "more edge lines than the declared " + std::to_string(m));
    }
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw GraphParseError(line_no, "vertex id out of range");
    }
    if (a == b) throw GraphParseError(line_no, "self-loop at vertex " + std::to_string(a));
    Edge e = make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!seen.insert(e).second) {
      throw GraphParseError(line_no, "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    edges.push_back(e);
  }
  if (n < 0) throw GraphParseError(0, "missing header line");
  if (static_cast<long long>(edges.size()) != m) {
    throw GraphParseError(0, "expected " + std::to_string(m) + " edge lines, found " +
                                 std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

VertexPartition connected_components(const Graph& g) {
  const int n = g.vertex_count();
  VertexPartition part;
  part.component_of.assign(n, -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (part.component_of[s] != -1) continue;
    const int id = part.component_count++;
    part.component_of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (part.component_of[w] == -1) {
          part.component_of[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  return part;
}

Graph add_edge(const Graph& g, Vertex s, Vertex t) {
  if (s == t) throw GraphError("cannot add self-loop at vertex " + std::to_string(s));
  if (g.adjacent(s, t)) {
    throw GraphError("edge " + std::to_string(s) + " " + std::to_string(t) + " already present");
  }
  std::vector<Edge> edges = g.edges();
  edges.push_back(make_edge(s, t));
  return Graph(g.vertex_count(), std::move(edges));
}

}  // namespace tdham
