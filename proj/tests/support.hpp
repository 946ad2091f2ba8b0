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

// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "tdham/graph.hpp"
#include "tdham/treedepth.hpp"

namespace tdham::testing {

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back(make_edge(u, v));
  }
  return Graph(n, edges);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(make_edge(i, (i + 1) % n));
  return Graph(n, edges);
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(make_edge(i, i + 1));
  return Graph(n, edges);
}

// Centre 0 joined to 1..leaves.
inline Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back(make_edge(0, i));
  return Graph(leaves + 1, edges);
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back(make_edge(i, (i + 1) % 5));
    edges.push_back(make_edge(i, i + 5));
    edges.push_back(make_edge(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, edges);
}

inline Graph two_triangles() {
  return Graph(6, {make_edge(0, 1), make_edge(1, 2), make_edge(0, 2), make_edge(3, 4), make_edge(4, 5),
                   make_edge(3, 5)});
}

// 0 - 1 - ... - (n-1), a valid forest for any graph on n vertices.
inline std::vector<Vertex> chain_parents(int n) {
  std::vector<Vertex> p(n);
  for (int i = 0; i < n; ++i) p[i] = i - 1;
  return p;
}

// Depth 5 forest of C16: 0 above 8, 8 above 4 and 12, those above the
// remaining even vertices, odd vertices as leaves.
inline std::vector<Vertex> c16_balanced_parents() {
  std::vector<Vertex> p(16);
  p[0] = kNoParent;
  p[8] = 0;
  p[4] = 8;
  p[12] = 8;
  p[2] = 4;
  p[6] = 4;
  p[10] = 12;
  p[14] = 12;
  for (int odd = 1; odd < 16; odd += 2) p[odd] = (odd % 4 == 1) ? odd + 1 : odd - 1;
  return p;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back(make_edge(u, v));
    }
  }
  return Graph(n, edges);
}

// Exact minimum-depth elimination forest by dynamic programming over vertex
// subsets. Meant for n up to about 14.
class MinDepthForest {
 public:
  explicit MinDepthForest(const Graph& g) : g_(g), n_(g.vertex_count()) {
    if (n_ > 20) throw std::invalid_argument("too many vertices for subset search");
    adj_.assign(n_, 0);
    for (const Edge& e : g.edges()) {
      adj_[e.u] |= 1u << e.v;
      adj_[e.v] |= 1u << e.u;
    }
    best_.assign(std::size_t{1} << n_, -1);
    root_.assign(std::size_t{1} << n_, -1);
  }

  std::vector<Vertex> parents() {
    std::vector<Vertex> p(n_, kNoParent);
    build(full(), kNoParent, p);
    return p;
  }

  int depth() { return solve(full()); }

 private:
  std::uint32_t full() const { return n_ == 0 ? 0 : (std::uint32_t{1} << n_) - 1; }

  std::uint32_t component(std::uint32_t set, std::uint32_t seed) const {
    std::uint32_t comp = seed;
    std::uint32_t frontier = seed;
    while (frontier) {
      const int v = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      const std::uint32_t fresh = adj_[v] & set & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    return comp;
  }

  int solve(std::uint32_t set) {
    if (set == 0) return 0;
    if (best_[set] >= 0) return best_[set];
    const std::uint32_t first = component(set, set & (~set + 1));
    int result;
    if (first != set) {
      result = std::max(solve(first), solve(set & ~first));
    } else {
      result = n_ + 1;
      for (std::uint32_t rest = set; rest; rest &= rest - 1) {
        const int v = __builtin_ctz(rest);
        const int d = 1 + solve(set & ~(1u << v));
        if (d < result) {
          result = d;
          root_[set] = v;
        }
      }
    }
    best_[set] = result;
    return result;
  }

  void build(std::uint32_t set, Vertex parent, std::vector<Vertex>& p) {
    while (set) {
      const std::uint32_t comp = component(set, set & (~set + 1));
      set &= ~comp;
      solve(comp);
      const int v = root_[comp];
      p[v] = parent;
      build(comp & ~(1u << v), v, p);
    }
  }

  const Graph& g_;
  int n_;
  std::vector<std::uint32_t> adj_;
  std::vector<int> best_;
  std::vector<int> root_;
};

inline std::vector<Vertex> min_depth_parents(const Graph& g) { return MinDepthForest(g).parents(); }

// Scratch file that is removed when the object dies.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("tdham_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace tdham::testing
