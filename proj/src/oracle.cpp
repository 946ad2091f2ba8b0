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

#include "tdham/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <tuple>

namespace tdham {

namespace {

void guard(const Graph& g, int limit = kOracleMaxVertices) {
  if (g.vertex_count() > limit) {
    throw OracleTooLarge("oracle limited to " + std::to_string(limit) + " vertices, got " +
                         std::to_string(g.vertex_count()));
  }
}

// Depth-first over edges in id order; a vertex's degree is checked as soon
// as its last incident edge has been decided.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, int max_edges, const std::function<bool(const std::vector<int>&)>& fn)
      : g_(g), max_edges_(max_edges), fn_(fn), degree_(g.vertex_count(), 0), last_(g.vertex_count(), -1) {
    for (int id = 0; id < g.edge_count(); ++id) {
      last_[g.edge(id).u] = id;
      last_[g.edge(id).v] = id;
    }
  }

  bool run() { return step(0); }

 private:
  bool settled(int id) const {
    const Edge& e = g_.edge(id);
    for (Vertex v : {e.u, e.v}) {
      if (last_[v] == id && degree_[v] == 1) return false;
    }
    return true;
  }

  bool step(int id) {
    if (id == g_.edge_count()) return fn_(chosen_);
    const Edge& e = g_.edge(id);
    if (degree_[e.u] < 2 && degree_[e.v] < 2 && static_cast<int>(chosen_.size()) < max_edges_) {
      ++degree_[e.u];
      ++degree_[e.v];
      chosen_.push_back(id);
      const bool stop = settled(id) && step(id + 1);
      chosen_.pop_back();
      --degree_[e.u];
      --degree_[e.v];
      if (stop) return true;
    }
    return settled(id) && step(id + 1);
  }

  const Graph& g_;
  int max_edges_;
  const std::function<bool(const std::vector<int>&)>& fn_;
  std::vector<int> degree_;
  std::vector<int> last_;
  std::vector<int> chosen_;
};

long long weight_of(const std::vector<int>& weights, const std::vector<int>& ids) {
  long long w = 0;
  for (int id : ids) w += weights.empty() ? 0 : weights[id];
  return w;
}

}  // namespace

AuxGraph build_aux_graph(const Graph& g, const std::vector<int>& weights) {
  if (!weights.empty() && static_cast<int>(weights.size()) != g.edge_count()) {
    throw std::invalid_argument("weight map size differs from edge count");
  }
  AuxGraph aux;
  aux.base_vertex_count = g.vertex_count();
  aux.vertex_count = 2 * g.vertex_count();
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    aux.edges.push_back({aux_copy(u, 0), aux_copy(u, 1)});
    aux.projection.push_back(-1);
    aux.weight.push_back(0);
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        aux.edges.push_back(make_edge(aux_copy(e.u, s), aux_copy(e.v, t)));
        aux.projection.push_back(id);
        aux.weight.push_back(weights.empty() ? 0 : weights[id]);
      }
    }
  }
  return aux;
}

bool for_each_partial_cycle_cover(const Graph& g,
                                  const std::function<bool(const std::vector<int>&)>& fn) {
  guard(g);
  return CoverSearch(g, g.edge_count(), fn).run();
}

int cycle_count(const Graph& g, const std::vector<int>& cover) {
  std::vector<std::vector<Vertex>> adj(g.vertex_count());
  for (int id : cover) {
    adj[g.edge(id).u].push_back(g.edge(id).v);
    adj[g.edge(id).v].push_back(g.edge(id).u);
  }
  std::vector<char> seen(g.vertex_count(), 0);
  int cycles = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s] || adj[s].empty()) continue;
    ++cycles;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return cycles;
}

bool brute_pcc(const Graph& g, int k, int l) {
  guard(g);
  std::function<bool(const std::vector<int>&)> fn = [&](const std::vector<int>& f) {
    return static_cast<int>(f.size()) == l && cycle_count(g, f) <= k;
  };
  return CoverSearch(g, l, fn).run();
}

bool brute_long_path(const Graph& g, int l) {
  guard(g);
  if (l == 0) return true;
  if (l > g.vertex_count()) return false;
  std::vector<char> used(g.vertex_count(), 0);
  std::function<bool(Vertex, int)> extend = [&](Vertex v, int len) {
    if (len == l) return true;
    for (Vertex w : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = 1;
      const bool found = extend(w, len + 1);
      used[w] = 0;
      if (found) return true;
    }
    return false;
  };
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    used[s] = 1;
    const bool found = extend(s, 1);
    used[s] = 0;
    if (found) return true;
  }
  return false;
}

BigInt count_consistent_cuts(const Graph& g, const std::vector<int>& edge_ids) {
  guard(g, 20);
  BigInt count = 0;
  const std::uint32_t limit = std::uint32_t{1} << g.vertex_count();
  for (std::uint32_t left = 0; left < limit; ++left) {
    bool ok = true;
    for (int id : edge_ids) {
      const Edge& e = g.edge(id);
      if (((left >> e.u) & 1) != ((left >> e.v) & 1)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

BigInt brute_count_Cw(const Graph& g, const std::vector<int>& weights, long long w, int l) {
  guard(g);
  BigInt total = 0;
  for_each_partial_cycle_cover(g, [&](const std::vector<int>& f) {
    if (static_cast<int>(f.size()) == l && weight_of(weights, f) == w) total += count_consistent_cuts(g, f);
    return false;
  });
  return total;
}

void for_each_simple_perfect_matching(const AuxGraph& aux,
                                      const std::function<void(const std::vector<int>&)>& fn) {
  if (aux.base_vertex_count > kOracleMaxVertices) throw OracleTooLarge("doubled graph too large");
  std::vector<std::vector<int>> incident(aux.vertex_count);
  for (int id = 0; id < static_cast<int>(aux.edges.size()); ++id) {
    incident[aux.edges[id].u].push_back(id);
    incident[aux.edges[id].v].push_back(id);
  }
  const int base_edges = aux.copy_edge_count() / 4;
  std::vector<char> matched(aux.vertex_count, 0);
  std::vector<char> base_used(base_edges, 0);
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int from) {
    while (from < aux.vertex_count && matched[from]) ++from;
    if (from == aux.vertex_count) {
      fn(chosen);
      return;
    }
    for (int id : incident[from]) {
      const Edge& e = aux.edges[id];
      const int other = e.u == from ? e.v : e.u;
      const int proj = aux.projection[id];
      if (matched[other] || (proj >= 0 && base_used[proj])) continue;
      matched[from] = matched[other] = 1;
      if (proj >= 0) base_used[proj] = 1;
      chosen.push_back(id);
      rec(from + 1);
      chosen.pop_back();
      if (proj >= 0) base_used[proj] = 0;
      matched[from] = matched[other] = 0;
    }
  };
  rec(0);
}

std::map<std::pair<long long, int>, BigInt> brute_Mw_table(const Graph& g, const std::vector<int>& weights) {
  guard(g);
  const AuxGraph aux = build_aux_graph(g, weights);
  std::map<std::vector<int>, BigInt> cut_cache;
  std::map<std::pair<long long, int>, BigInt> table;
  for_each_simple_perfect_matching(aux, [&](const std::vector<int>& m) {
    std::vector<int> projected;
    long long w = 0;
    for (int id : m) {
      if (aux.projection[id] < 0) continue;
      projected.push_back(aux.projection[id]);
      w += aux.weight[id];
    }
    std::sort(projected.begin(), projected.end());
    auto it = cut_cache.find(projected);
    if (it == cut_cache.end()) it = cut_cache.emplace(projected, count_consistent_cuts(g, projected)).first;
    table[{w, static_cast<int>(projected.size())}] += it->second;
  });
  return table;
}

BigInt brute_count_Mw(const Graph& g, const std::vector<int>& weights, long long w, int l) {
  const auto table = brute_Mw_table(g, weights);
  auto it = table.find({w, l});
  return it == table.end() ? BigInt(0) : it->second;
}

VertexConstraint label_constraint(Label l) {
  switch (l) {
    case Label::kZero:
      return {-1, true, true};
    case Label::kOneL:
      return {0, false, true};
    case Label::kOneR:
      return {1, false, true};
    case Label::kTwoL:
      return {0, false, false};
    case Label::kTwoR:
      return {1, false, false};
  }
  return {};
}

namespace {

// Everything the node-level enumerations share: which vertices carry a
// side, which edges lie in the sheaf, and which copies must be covered.
struct NodeSetup {
  std::vector<char> in_broom;
  std::vector<VertexConstraint> cons;
  std::vector<char> owned;
  std::vector<int> cover_bit;        // bit index of copy 0; copy 1 is the next bit, -1 if not covered
  std::vector<Vertex> side_vertices; // vertices whose side is enumerated
  std::vector<Vertex> sheaf_internal;
  std::vector<int> sheaf_edges;
  std::uint32_t full_mask = 0;
};

NodeSetup node_setup(const Graph& g, const EliminationForest& t, const LeafPlan& plan, Vertex u,
                     const std::vector<std::pair<Vertex, VertexConstraint>>& tail, NodeMode mode) {
  if (g.vertex_count() > 6) throw OracleTooLarge("node-level oracle limited to 6 vertices");
  const int n = g.vertex_count();
  const std::vector<Vertex> want = tail_path(t, u, mode == NodeMode::kInclusive);
  if (want.size() != tail.size()) throw std::invalid_argument("constraints do not cover the tail");
  NodeSetup s;
  s.in_broom.assign(n, 0);
  s.cons.assign(n, {});
  s.owned.assign(n, 0);
  s.cover_bit.assign(n, -1);
  std::vector<char> on_tail(n, 0);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (tail[i].first != want[i]) throw std::invalid_argument("constraints do not follow the tail");
    on_tail[want[i]] = 1;
    s.cons[want[i]] = tail[i].second;
  }
  int bits = 0;
  for (Vertex v = 0; v < n; ++v) {
    const bool below = t.is_ancestor(u, v) && !(mode == NodeMode::kInclusive && v == u);
    const bool charged_here = t.is_ancestor(u, plan.left[v]);
    if (below) {
      s.in_broom[v] = 1;
      s.owned[v] = 1;
      s.cover_bit[v] = bits;
      bits += 2;
    } else if (on_tail[v]) {
      s.in_broom[v] = 1;
      s.owned[v] = charged_here;
    }
    if (s.in_broom[v] && (s.owned[v] || s.cons[v].side >= 0)) {
      if (s.cons[v].side < 0) s.side_vertices.push_back(v);
    } else if (s.in_broom[v] && !(s.cons[v].forbid0 && s.cons[v].forbid1)) {
      throw std::invalid_argument("unowned tail vertex with a free side must forbid both copies");
    }
    if (charged_here) s.sheaf_internal.push_back(v);
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    if (t.is_ancestor(u, plan.left[plan.deeper[id]])) s.sheaf_edges.push_back(id);
  }
  s.full_mask = bits == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << bits) - 1;
  return s;
}

using IntPoly = TruncatedPoly3<IntegerRing>;

void add_term(IntPoly& p, DegreeCaps caps, long long a, int b, int c, const Integer& count) {
  if (a > caps.a || b > caps.b || c > caps.c) return;
  p.add_scaled(IntPoly::monomial(IntegerRing{}, caps, static_cast<int>(a), b, c, 1), count);
}

// Assigns sides to every vertex of side_vertices in turn; forced sides come
// from the constraints, and unowned free vertices get an arbitrary side.
template <class Fn>
void for_each_side_assignment(const NodeSetup& s, int n, Fn&& fn) {
  std::vector<int> side(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (s.cons[v].side >= 0) side[v] = s.cons[v].side;
  }
  const std::uint32_t limit = std::uint32_t{1} << s.side_vertices.size();
  for (std::uint32_t bits = 0; bits < limit; ++bits) {
    for (std::size_t i = 0; i < s.side_vertices.size(); ++i) side[s.side_vertices[i]] = (bits >> i) & 1;
    fn(side);
  }
}

bool copy_allowed(const NodeSetup& s, Vertex v, int copy) {
  return copy == 0 ? !s.cons[v].forbid0 : !s.cons[v].forbid1;
}

std::uint32_t cover_of(const NodeSetup& s, Vertex v, int copy) {
  return s.cover_bit[v] < 0 ? 0 : std::uint32_t{1} << (s.cover_bit[v] + copy);
}

}  // namespace

TruncatedPoly3<IntegerRing> brute_node_poly_constrained(
    const Graph& g, const EliminationForest& t, const LeafPlan& plan, const std::vector<int>& weights,
    DegreeCaps caps, Vertex u, const std::vector<std::pair<Vertex, VertexConstraint>>& tail, NodeMode mode) {
  const NodeSetup s = node_setup(g, t, plan, u, tail, mode);
  IntPoly result(IntegerRing{}, caps);

  // State: (covered copies, packed degrees) -> number of partial edge sets.
  using State = std::map<std::pair<std::uint32_t, std::uint64_t>, Integer>;
  for_each_side_assignment(s, g.vertex_count(), [&](const std::vector<int>& side) {
    State states{{{0u, 0ull}, Integer(1)}};
    auto extend = [&](const std::vector<std::tuple<std::uint32_t, int, int, int>>& options) {
      State next;
      for (const auto& [key, count] : states) {
        next[key] = next[key] + count;
        for (const auto& [mask, a, b, c] : options) {
          const std::uint64_t k = key.second + IntPoly::pack(a, b, c);
          if (IntPoly::deg_a(k) > caps.a || IntPoly::deg_b(k) > caps.b || IntPoly::deg_c(k) > caps.c) continue;
          auto nk = std::make_pair(key.first | mask, k);
          next[nk] = next[nk] + count;
        }
      }
      states = std::move(next);
    };
    for (Vertex y : s.sheaf_internal) {
      if (!copy_allowed(s, y, 0) || !copy_allowed(s, y, 1)) continue;
      extend({{cover_of(s, y, 0) | cover_of(s, y, 1), 0, 1, 0}});
    }
    for (int id : s.sheaf_edges) {
      const Edge& e = g.edge(id);
      if (side[e.u] != side[e.v]) continue;
      std::vector<std::tuple<std::uint32_t, int, int, int>> options;
      for (int cu = 0; cu < 2; ++cu) {
        for (int cv = 0; cv < 2; ++cv) {
          if (!copy_allowed(s, e.u, cu) || !copy_allowed(s, e.v, cv)) continue;
          options.emplace_back(cover_of(s, e.u, cu) | cover_of(s, e.v, cv), weights[id], 1, 1);
        }
      }
      if (!options.empty()) extend(options);
    }
    for (const auto& [key, count] : states) {
      if (key.first != s.full_mask) continue;
      add_term(result, caps, IntPoly::deg_a(key.second), IntPoly::deg_b(key.second),
               IntPoly::deg_c(key.second), count);
    }
  });
  return result;
}

TruncatedPoly3<IntegerRing> brute_node_poly(const Graph& g, const EliminationForest& t, const LeafPlan& plan,
                                            const std::vector<int>& weights, DegreeCaps caps, Vertex u,
                                            const TailAssignment& f, NodeMode mode) {
  std::vector<std::pair<Vertex, VertexConstraint>> tail;
  for (auto [v, l] : f.path()) tail.emplace_back(v, label_constraint(l));
  return brute_node_poly_constrained(g, t, plan, weights, caps, u, tail, mode);
}

TruncatedPoly3<IntegerRing> brute_node_poly_literal(const Graph& g, const EliminationForest& t,
                                                    const LeafPlan& plan, const std::vector<int>& weights,
                                                    DegreeCaps caps, Vertex u, const TailAssignment& f,
                                                    NodeMode mode) {
  std::vector<std::pair<Vertex, VertexConstraint>> tail;
  for (auto [v, l] : f.path()) tail.emplace_back(v, label_constraint(l));
  const NodeSetup s = node_setup(g, t, plan, u, tail, mode);
  const AuxGraph aux = build_aux_graph(g, weights);

  // The sheaf as aux edge ids.
  std::vector<int> sheaf;
  for (Vertex y : s.sheaf_internal) sheaf.push_back(y);
  for (int id : s.sheaf_edges) {
    for (int c = 0; c < 4; ++c) sheaf.push_back(g.vertex_count() + 4 * id + c);
  }
  if (sheaf.size() > 22) throw OracleTooLarge("literal node enumeration limited to 22 sheaf edges");

  IntPoly result(IntegerRing{}, caps);
  const int n = g.vertex_count();
  for_each_side_assignment(s, n, [&](const std::vector<int>& side) {
    const std::uint32_t limit = std::uint32_t{1} << sheaf.size();
    for (std::uint32_t subset = 0; subset < limit; ++subset) {
      std::vector<int> per_base(g.edge_count(), 0);
      std::vector<int> touched(2 * n, 0);
      long long a = 0;
      int b = 0;
      int c = 0;
      bool ok = true;
      for (std::size_t i = 0; i < sheaf.size() && ok; ++i) {
        if (!((subset >> i) & 1)) continue;
        const int id = sheaf[i];
        const Edge& e = aux.edges[id];
        ++touched[e.u];
        ++touched[e.v];
        ++b;
        a += aux.weight[id];
        if (aux.projection[id] >= 0) {
          ++c;
          if (++per_base[aux.projection[id]] > 1) ok = false;            // simple
          if (side[e.u / 2] != side[e.v / 2]) ok = false;                // consistent with the cut
        }
      }
      if (!ok) continue;
      for (Vertex v = 0; v < n && ok; ++v) {
        if (!s.in_broom[v]) continue;
        if (s.cons[v].forbid0 && touched[aux_copy(v, 0)]) ok = false;
        if (s.cons[v].forbid1 && touched[aux_copy(v, 1)]) ok = false;
        if (s.cover_bit[v] >= 0 && (!touched[aux_copy(v, 0)] || !touched[aux_copy(v, 1)])) ok = false;
      }
      if (ok) add_term(result, caps, a, b, c, Integer(1));
    }
  });
  return result;
}

namespace {

// Canonical code: the smallest upper-triangle bit string over all vertex
// orders that list vertices by non-increasing degree.
std::uint32_t canonical_code(int n, const std::vector<std::uint32_t>& adj) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  auto deg = [&](int v) { return __builtin_popcount(adj[v]); };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return deg(x) > deg(y); });
  std::vector<std::pair<int, int>> classes;  // [begin, end) of equal degree
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && deg(order[j]) == deg(order[i])) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = ~std::uint32_t{0};
  std::function<void(std::size_t)> rec = [&](std::size_t ci) {
    if (ci == classes.size()) {
      std::uint32_t code = 0;
      int bit = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
          if ((adj[order[i]] >> order[j]) & 1) code |= std::uint32_t{1} << bit;
        }
      }
      best = std::min(best, code);
      return;
    }
    auto [b, e] = classes[ci];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      rec(ci + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(0);
  return best;
}

Graph decode(int n, std::uint32_t code) {
  std::vector<Edge> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if ((code >> bit) & 1) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace

std::vector<Graph> nonisomorphic_graphs(int n) {
  if (n < 0 || n > 7) throw OracleTooLarge("graph enumeration limited to 7 vertices");
  std::set<std::uint32_t> level{0};  // the single graph on 0 vertices
  for (int size = 1; size <= n; ++size) {
    std::set<std::uint32_t> next;
    for (std::uint32_t code : level) {
      const Graph base = decode(size - 1, code);
      for (std::uint32_t nbrs = 0; nbrs < (std::uint32_t{1} << (size - 1)); ++nbrs) {
        std::vector<std::uint32_t> adj(size, 0);
        for (const Edge& e : base.edges()) {
          adj[e.u] |= std::uint32_t{1} << e.v;
          adj[e.v] |= std::uint32_t{1} << e.u;
        }
        for (int v = 0; v < size - 1; ++v) {
          if ((nbrs >> v) & 1) {
            adj[v] |= std::uint32_t{1} << (size - 1);
            adj[size - 1] |= std::uint32_t{1} << v;
          }
        }
        next.insert(canonical_code(size, adj));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (std::uint32_t code : level) out.push_back(decode(n, code));
  return out;
}

}  // namespace tdham
