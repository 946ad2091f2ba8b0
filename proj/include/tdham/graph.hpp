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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdham {

using Vertex = int;

/// Undirected edge stored with the smaller endpoint first.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by parse_graph; carries the 1-based line number of the offending
/// line (0 when the problem is not tied to a line, e.g. a missing edge line).
class GraphParseError : public GraphError {
 public:
  GraphParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
///
/// Edge ids are positions in edges(); the order is the insertion order, so
/// serialize() reproduces canonical input byte for byte.
class Graph {
 public:
  Graph() = default;
  /// Throws GraphError on out-of-range ids, self-loops or duplicate edges.
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  /// Sorted neighbour list.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }

  bool adjacent(Vertex a, Vertex b) const;
  std::optional<int> edge_id(Vertex a, Vertex b) const;

  std::string serialize() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  // Parallel to adjacency_: edge id of each neighbour entry.
  std::vector<std::vector<int>> incident_ids_;
};

Edge make_edge(Vertex a, Vertex b);

/// Reads "n m" followed by m "u v" lines. Lines starting with 'c' and blank
/// lines are skipped.
Graph parse_graph(std::string_view text);

struct VertexPartition {
  std::vector<int> component_of;
  int component_count = 0;
};

VertexPartition connected_components(const Graph& g);

/// Returns a copy of g with edge st appended. Throws GraphError if s == t or
/// the edge already exists.
Graph add_edge(const Graph& g, Vertex s, Vertex t);

}  // namespace tdham
