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

// Brute-force ground truth. Everything here is exponential on purpose and
// shares no code with the counting recursion beyond the data structures.

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tdham/counter.hpp"
#include "tdham/graph.hpp"
#include "tdham/poly.hpp"
#include "tdham/rings.hpp"
#include "tdham/treedepth.hpp"

namespace tdham {

class OracleTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxVertices = 12;

/// The doubled graph: vertex u becomes copies 2u and 2u+1; edges 0..n-1 join
/// the two copies of each vertex, and every base edge is followed by its
/// four copies in the order (u0 v0), (u0 v1), (u1 v0), (u1 v1).
struct AuxGraph {
  int base_vertex_count = 0;
  int vertex_count = 0;
  std::vector<Edge> edges;
  /// Base edge id of each copy; -1 for the vertex-internal edges.
  std::vector<int> projection;
  /// Weight of the projected edge, 0 for the vertex-internal edges.
  std::vector<int> weight;

  int internal_edge_count() const { return base_vertex_count; }
  int copy_edge_count() const { return static_cast<int>(edges.size()) - base_vertex_count; }
};

inline int aux_copy(Vertex u, int s) { return 2 * u + s; }

/// Weights may be empty (all zero) or one per base edge.
AuxGraph build_aux_graph(const Graph& g, const std::vector<int>& weights = {});

/// Calls fn with every partial cycle cover (edge ids, ascending), including
/// the empty one, until fn returns true. Returns whether fn stopped it.
bool for_each_partial_cycle_cover(const Graph& g,
                                  const std::function<bool(const std::vector<int>&)>& fn);

/// Number of cycles formed by a partial cycle cover.
int cycle_count(const Graph& g, const std::vector<int>& cover);

/// Some partial cycle cover has exactly l edges and at most k cycles.
bool brute_pcc(const Graph& g, int k, int l);

/// Some simple path visits exactly l vertices.
bool brute_long_path(const Graph& g, int l);

/// Cuts (L, R) of V with no listed edge crossing, counted one by one.
BigInt count_consistent_cuts(const Graph& g, const std::vector<int>& edge_ids);

/// |C_w|: pairs of a partial cycle cover with l edges and weight w, and a
/// consistent cut.
BigInt brute_count_Cw(const Graph& g, const std::vector<int>& weights, long long w, int l);

/// Calls fn with every simple perfect matching (aux edge ids) of aux.
void for_each_simple_perfect_matching(const AuxGraph& aux,
                                      const std::function<void(const std::vector<int>&)>& fn);

/// |M_w|: simple perfect matchings of the doubled graph with weight w and l
/// copy edges, each times its number of consistent cuts of V.
BigInt brute_count_Mw(const Graph& g, const std::vector<int>& weights, long long w, int l);

/// |M_w| for every (w, l) at once, keyed by (w, l). Absent keys are zero.
std::map<std::pair<long long, int>, BigInt> brute_Mw_table(const Graph& g, const std::vector<int>& weights);

/// Restrictions on one tail vertex during node-level enumeration.
struct VertexConstraint {
  int side = -1;         // 0 = L, 1 = R, -1 = free
  bool forbid0 = false;  // no chosen edge may touch copy 0
  bool forbid1 = false;  // no chosen edge may touch copy 1

  friend bool operator==(const VertexConstraint&, const VertexConstraint&) = default;
};

VertexConstraint label_constraint(Label l);

enum class NodeMode { kInclusive, kExclusive };

/// Node-level polynomial by enumeration: edge sets F inside the sheaf of u
/// and sides for the vertices owned by subtree[u], subject to the tail
/// constraints. tail lists (vertex, constraint) root-first and must be the
/// tail of u for the mode.
TruncatedPoly3<IntegerRing> brute_node_poly_constrained(
    const Graph& g, const EliminationForest& t, const LeafPlan& plan, const std::vector<int>& weights,
    DegreeCaps caps, Vertex u, const std::vector<std::pair<Vertex, VertexConstraint>>& tail, NodeMode mode);

TruncatedPoly3<IntegerRing> brute_node_poly(const Graph& g, const EliminationForest& t, const LeafPlan& plan,
                                            const std::vector<int>& weights, DegreeCaps caps, Vertex u,
                                            const TailAssignment& f, NodeMode mode);

/// Same quantity by enumerating every subset of the sheaf and every cut
/// literally. Only for very small graphs.
TruncatedPoly3<IntegerRing> brute_node_poly_literal(const Graph& g, const EliminationForest& t,
                                                    const LeafPlan& plan, const std::vector<int>& weights,
                                                    DegreeCaps caps, Vertex u, const TailAssignment& f,
                                                    NodeMode mode);

/// One representative of every isomorphism class of graphs on n vertices,
/// n <= 7, edges ascending.
std::vector<Graph> nonisomorphic_graphs(int n);

}  // namespace tdham
