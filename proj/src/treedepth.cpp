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

#include "tdham/treedepth.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

namespace tdham {

bool EliminationForest::is_ancestor(Vertex a, Vertex b) const {
  return enter_[a] <= enter_[b] && exit_[b] <= exit_[a];
}

std::string EliminationForest::serialize() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (i) out << ' ';
    out << parent_[i];
  }
  out << '\n';
  return out.str();
}

EliminationForest make_forest(std::vector<Vertex> parents) {
  const int n = static_cast<int>(parents.size());
  EliminationForest t;
  t.children_.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    Vertex p = parents[v];
    if (p == kNoParent) {
      t.roots_.push_back(v);
    } else if (p < 0 || p >= n) {
      throw ForestError("parent of vertex " + std::to_string(v) + " out of range: " +
                        std::to_string(p));
    } else if (p == v) {
      throw ForestError("vertex " + std::to_string(v) + " is its own parent");
    } else {
      t.children_[p].push_back(v);
    }
  }
  t.parent_ = std::move(parents);

  // Walk down from the roots; anything left unvisited sits on a cycle.
  t.level_.assign(n, 0);
  t.enter_.assign(n, -1);
  t.exit_.assign(n, -1);
  int clock = 0;
  std::vector<std::pair<Vertex, std::size_t>> stack;
  for (Vertex r : t.roots_) {
    t.level_[r] = 1;
    t.enter_[r] = clock++;
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < t.children_[v].size()) {
        Vertex c = t.children_[v][next++];
        t.level_[c] = t.level_[v] + 1;
        t.enter_[c] = clock++;
        stack.emplace_back(c, 0);
      } else {
        t.exit_[v] = clock++;
        t.depth_ = std::max(t.depth_, t.level_[v]);
        stack.pop_back();
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (t.enter_[v] == -1) {
      throw ForestError("parent pointers contain a cycle through vertex " + std::to_string(v));
    }
  }
  return t;
}

EliminationForest validate_forest(const Graph& g, std::vector<Vertex> parents) {
  if (static_cast<int>(parents.size()) != g.vertex_count()) {
    throw ForestError("forest has " + std::to_string(parents.size()) + " entries but the graph has " +
                      std::to_string(g.vertex_count()) + " vertices");
  }
  EliminationForest t = make_forest(std::move(parents));
  for (const Edge& e : g.edges()) {
    if (!t.is_ancestor(e.u, e.v) && !t.is_ancestor(e.v, e.u)) {
      throw ForestError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                        " joins vertices that are not in ancestor-descendant relation");
    }
  }
  return t;
}

std::vector<Vertex> parse_forest(std::string_view text, int n) {
  std::vector<Vertex> parents;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\n')) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' && text[j] != '\n') ++j;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc() || ptr != text.data() + j) {
      throw ForestError("malformed forest entry '" + std::string(text.substr(i, j - i)) + "'");
    }
    parents.push_back(value);
    i = j;
  }
  if (static_cast<int>(parents.size()) != n) {
    throw ForestError("forest has " + std::to_string(parents.size()) + " entries, expected " +
                      std::to_string(n));
  }
  return parents;
}

EliminationForest build_dfs_forest(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<Vertex> parent(n, kNoParent);
  std::vector<char> visited(n, 0);
  std::vector<std::pair<Vertex, std::size_t>> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (visited[s]) continue;
    visited[s] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& nbrs = g.neighbors(v);
      while (next < nbrs.size() && visited[nbrs[next]]) ++next;
      if (next == nbrs.size()) {
        stack.pop_back();
        continue;
      }
      Vertex w = nbrs[next++];
      visited[w] = 1;
      parent[w] = v;
      stack.emplace_back(w, 0);
    }
  }
  return validate_forest(g, std::move(parent));
}

EliminationForest augment_root(const Graph& g, const EliminationForest& t, Vertex s) {
  std::vector<Vertex> parent = t.parents();
  const Vertex former = parent[s];
  for (Vertex c : t.children(s)) parent[c] = former;
  parent[s] = kNoParent;
  for (Vertex v = 0; v < static_cast<Vertex>(parent.size()); ++v) {
    if (v != s && parent[v] == kNoParent) parent[v] = s;
  }
  return validate_forest(g, std::move(parent));
}

LeafPlan leaf_plan(const Graph& g, const EliminationForest& t) {
  const int n = g.vertex_count();
  LeafPlan plan;
  plan.left.assign(n, kNoParent);
  for (Vertex v = 0; v < n; ++v) {
    Vertex x = v;
    while (!t.is_leaf(x)) x = t.children(x).front();
    plan.left[v] = x;
  }
  plan.leaf_vertices.assign(n, {});
  plan.leaf_edges.assign(n, {});
  for (Vertex v = 0; v < n; ++v) plan.leaf_vertices[plan.left[v]].push_back(v);
  plan.deeper.resize(g.edge_count());
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    Vertex y = t.is_ancestor(e.u, e.v) ? e.v : e.u;
    plan.deeper[id] = y;
    plan.leaf_edges[plan.left[y]].push_back(id);
  }
  return plan;
}

}  // namespace tdham
