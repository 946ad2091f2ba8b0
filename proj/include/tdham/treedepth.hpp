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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tdham/graph.hpp"

namespace tdham {

inline constexpr Vertex kNoParent = -1;

class ForestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rooted forest over the vertex set of a graph in which every graph edge
/// joins an ancestor-descendant pair. Children and roots are kept in
/// ascending id order; the first child is the "left-most" one.
class EliminationForest {
 public:
  EliminationForest() = default;

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  Vertex parent(Vertex v) const { return parent_[v]; }
  const std::vector<Vertex>& parents() const { return parent_; }
  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  const std::vector<Vertex>& roots() const { return roots_; }
  bool is_leaf(Vertex v) const { return children_[v].empty(); }

  /// Number of vertices on the longest root-to-leaf path.
  int depth() const { return depth_; }
  /// |tail[v]|, i.e. 1 for roots.
  int level(Vertex v) const { return level_[v]; }

  /// True when a is an ancestor of b (every vertex is its own ancestor).
  bool is_ancestor(Vertex a, Vertex b) const;

  /// One line of n integers, -1 marking roots.
  std::string serialize() const;

 private:
  friend EliminationForest make_forest(std::vector<Vertex> parents);

  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> roots_;
  std::vector<int> level_;
  // Euler-tour interval for O(1) ancestor queries.
  std::vector<int> enter_;
  std::vector<int> exit_;
  int depth_ = 0;
};

/// Builds the forest structure from parent pointers, checking only that they
/// form a forest. Throws ForestError on cycles or out-of-range parents.
EliminationForest make_forest(std::vector<Vertex> parents);

/// Checks that parents describe a forest on g's vertices and that every edge
/// of g joins an ancestor-descendant pair. The error message names the first
/// offending edge.
EliminationForest validate_forest(const Graph& g, std::vector<Vertex> parents);

/// Parses the one-line forest format for a graph with n vertices.
std::vector<Vertex> parse_forest(std::string_view text, int n);

/// Depth-first search forest, visiting roots and neighbours in ascending id
/// order.
EliminationForest build_dfs_forest(const Graph& g);

/// Makes s the unique root: s is cut out (its children move up to its former
/// parent, or become roots), then every remaining root is hung below s.
EliminationForest augment_root(const Graph& g, const EliminationForest& t, Vertex s);

/// Per-leaf responsibility sets. left(v) is the leaf reached from v by
/// repeatedly taking the first child; an edge belongs to the leaf
/// left(deeper endpoint), a vertex to the leaf left(vertex).
struct LeafPlan {
  std::vector<Vertex> left;
  /// Deeper endpoint (the descendant) of every edge, indexed by edge id.
  std::vector<Vertex> deeper;
  /// X_u: vertices x with left(x) = u. Empty for non-leaves. Ascending.
  std::vector<std::vector<Vertex>> leaf_vertices;
  /// Z_u: ids of edges whose deeper endpoint y has left(y) = u. Ascending.
  std::vector<std::vector<int>> leaf_edges;
};

LeafPlan leaf_plan(const Graph& g, const EliminationForest& t);

}  // namespace tdham
