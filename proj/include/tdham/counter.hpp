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

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdham/graph.hpp"
#include "tdham/poly.hpp"
#include "tdham/treedepth.hpp"

namespace tdham {

/// State of a tail vertex: unused, one copy matched, or both copies matched,
/// together with the side of the cut (L or R) for the nonzero states.
enum class Label : std::uint8_t { kZero, kOneL, kOneR, kTwoL, kTwoR };

/// Fixed branching order.
inline constexpr std::array<Label, 5> kLabels = {Label::kZero, Label::kOneL, Label::kOneR,
                                                 Label::kTwoL, Label::kTwoR};
/// Inclusion-exclusion weights matching kLabels.
inline constexpr std::array<int, 5> kExclusiveCoefficients = {1, -2, -2, 1, 1};

inline int label_copies(Label l) {
  switch (l) {
    case Label::kZero:
      return 0;
    case Label::kOneL:
    case Label::kOneR:
      return 1;
    default:
      return 2;
  }
}

/// 0 for L, 1 for R, -1 for Zero.
inline int label_side(Label l) {
  switch (l) {
    case Label::kOneL:
    case Label::kTwoL:
      return 0;
    case Label::kOneR:
    case Label::kTwoR:
      return 1;
    default:
      return -1;
  }
}

std::string_view label_name(Label l);

/// Labels of the vertices on a root-to-node path, stored as a stack plus a
/// per-vertex lookup table.
class TailAssignment {
 public:
  explicit TailAssignment(int n) : label_(n, Label::kZero), on_(n, 0) {}

  /// Builds an assignment from (vertex, label) pairs in root-to-node order.
  static TailAssignment from_path(int n, const std::vector<std::pair<Vertex, Label>>& path) {
    TailAssignment f(n);
    for (auto [v, l] : path) f.push(v, l);
    return f;
  }

  void push(Vertex v, Label l) {
    if (on_[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " already on tail");
    stack_.emplace_back(v, l);
    label_[v] = l;
    on_[v] = 1;
  }
  void pop() {
    on_[stack_.back().first] = 0;
    stack_.pop_back();
  }
  void set_top(Label l) {
    stack_.back().second = l;
    label_[stack_.back().first] = l;
  }
  void clear() {
    while (!stack_.empty()) pop();
  }

  bool contains(Vertex v) const { return v >= 0 && v < static_cast<int>(on_.size()) && on_[v]; }
  /// Throws std::out_of_range when v is not on the tail.
  Label at(Vertex v) const {
    if (!contains(v)) throw std::out_of_range("vertex " + std::to_string(v) + " is not on the tail");
    return label_[v];
  }
  /// Unchecked lookup.
  Label operator[](Vertex v) const { return label_[v]; }

  const std::vector<std::pair<Vertex, Label>>& path() const { return stack_; }
  int size() const { return static_cast<int>(stack_.size()); }

 private:
  std::vector<std::pair<Vertex, Label>> stack_;
  std::vector<Label> label_;
  std::vector<char> on_;
};

/// Ancestors of u in root-first order; u itself is included when inclusive.
std::vector<Vertex> tail_path(const EliminationForest& t, Vertex u, bool inclusive);

/// 2n * 5^d, saturated at the largest uint64.
std::uint64_t call_bound(int n, int d);

struct CallStats {
  std::uint64_t exclusive_calls = 0;
  std::uint64_t inclusive_calls = 0;
  int live_polys = 0;
  int peak_polys = 0;
};

/// Everything one run of the recursion needs. Holds references to the graph
/// and forest, which must outlive the context. Not thread-safe: the label
/// stack and counters are mutated during evaluation.
template <class Ring>
class CountContext {
 public:
  using Poly = TruncatedPoly3<Ring>;
  using Coeff = typename Ring::value_type;

  /// weights[id] is the weight of edge id; values must be non-negative.
  CountContext(const Graph& g, const EliminationForest& t, std::vector<int> weights, Ring ring,
               DegreeCaps caps)
      : g_(&g),
        t_(&t),
        plan_(leaf_plan(g, t)),
        weights_(std::move(weights)),
        ring_(std::move(ring)),
        caps_(caps),
        labels_(g.vertex_count()) {
    if (t.vertex_count() != g.vertex_count()) throw std::invalid_argument("forest size mismatch");
    if (static_cast<int>(weights_.size()) != g.edge_count()) {
      throw std::invalid_argument("weight map size differs from edge count");
    }
    for (int w : weights_) {
      if (w < 0) throw std::invalid_argument("negative edge weight");
    }
    up_.resize(g.vertex_count());
    for (int id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edge(id);
      const Vertex y = plan_.deeper[id];
      up_[y].push_back({y == e.u ? e.v : e.u, weights_[id]});
    }
    for (int s = 0; s < 5; ++s) coeffs_[s] = ring_.from_int(kExclusiveCoefficients[s]);
    two_ = ring_.from_int(2);
    unit_.emplace(one());
    coeff_ij_ = {ring_.from_int(1), ring_.from_int(2), ring_.from_int(4)};
  }

  // The context keeps pointers; temporaries would dangle.
  CountContext(Graph&&, const EliminationForest&, std::vector<int>, Ring, DegreeCaps) = delete;
  CountContext(const Graph&, EliminationForest&&, std::vector<int>, Ring, DegreeCaps) = delete;

  const Graph& graph() const { return *g_; }
  const EliminationForest& forest() const { return *t_; }
  const LeafPlan& plan() const { return plan_; }
  const std::vector<int>& weights() const { return weights_; }
  const Ring& ring() const { return ring_; }
  const DegreeCaps& caps() const { return caps_; }
  const CallStats& stats() const { return stats_; }
  void reset_stats() { stats_ = CallStats{}; }

  Poly zero() const { return Poly(ring_, caps_); }
  Poly one() const { return Poly::one(ring_, caps_); }

  /// Q factor of edge id under f.
  Poly q_factor(int id, const TailAssignment& f) const {
    const Edge& e = g_->edge(id);
    Poly p = one();
    const Label x = f.at(e.u);
    const Label y = f.at(e.v);
    const int ij = label_copies(x) * label_copies(y);
    if (ij > 0 && label_side(x) == label_side(y)) {
      p.mul_binomial(weights_[id], 1, 1, ring_.from_int(ij));
    }
    return p;
  }

  /// R factor of vertex x under f.
  Poly r_factor(Vertex x, const TailAssignment& f) const {
    Poly p = one();
    switch (label_copies(f.at(x))) {
      case 0:
        p.scale(two_);
        break;
      case 2:
        p.mul_binomial(0, 1, 0, ring_.one());
        break;
      default:
        break;
    }
    return p;
  }

  /// Closed form at a leaf: Q over Z_u times R over X_u.
  Poly leaf_poly(Vertex u, const TailAssignment& f) const {
    if (!t_->is_leaf(u)) throw std::invalid_argument("vertex " + std::to_string(u) + " is not a leaf");
    Poly p = one();
    for (int id : plan_.leaf_edges[u]) p = p * q_factor(id, f);
    for (Vertex x : plan_.leaf_vertices[u]) p = p * r_factor(x, f);
    return p;
  }

  /// P(u, f) for f defined exactly on the strict ancestors of u.
  Poly compute_exclusive(Vertex u, const TailAssignment& f) {
    load_tail(u, f, false);
    Tracked out(stats_, zero());
    exclusive_into(u, out.p, nullptr, ring_.one());
    for (Vertex y : spine(u)) apply_phi(y, out.p);
    labels_.clear();
    return std::move(out.p);
  }

  /// P[u, f] for f defined exactly on u and its ancestors.
  Poly compute_inclusive(Vertex u, const TailAssignment& f) {
    load_tail(u, f, true);
    Tracked out(stats_, zero());
    inclusive_into(u, out.p, nullptr, ring_.one());
    for (Vertex y : spine(u)) apply_phi(y, out.p);
    labels_.clear();
    return std::move(out.p);
  }

  /// Product of P(r, {}) over all roots; the constant 1 for the empty graph.
  Poly forest_poly() {
    labels_.clear();
    Tracked out(stats_, zero());
    if (t_->roots().empty()) {
      out.p = one();
    } else if (t_->roots().size() == 1) {
      exclusive_into(t_->roots().front(), out.p, nullptr, ring_.one());
    } else {
      product_into(t_->roots(), -1, out.p, nullptr, ring_.one());
    }
    return std::move(out.p);
  }

 private:
  struct UpEdge {
    Vertex other;
    int weight;
  };

  // Counts a polynomial as live for the duration of its scope.
  struct Tracked {
    Tracked(CallStats& s, Poly poly) : stats(&s), p(std::move(poly)) {
      if (++stats->live_polys > stats->peak_polys) stats->peak_polys = stats->live_polys;
    }
    ~Tracked() { --stats->live_polys; }
    Tracked(const Tracked&) = delete;
    Tracked& operator=(const Tracked&) = delete;

    CallStats* stats;
    Poly p;
  };

  // Strict ancestors y of u with left(y) = left(u), i.e. those reached by
  // climbing while the current vertex is a first child.
  std::vector<Vertex> spine(Vertex u) const {
    std::vector<Vertex> out;
    Vertex v = u;
    while (t_->parent(v) != kNoParent && t_->children(t_->parent(v)).front() == v) {
      v = t_->parent(v);
      out.push_back(v);
    }
    return out;
  }

  void load_tail(Vertex u, const TailAssignment& f, bool inclusive) {
    const std::vector<Vertex> want = tail_path(*t_, u, inclusive);
    if (static_cast<int>(want.size()) != f.size()) {
      throw std::invalid_argument("assignment does not cover exactly the tail of vertex " +
                                  std::to_string(u));
    }
    labels_.clear();
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (f.path()[i].first != want[i]) {
        throw std::invalid_argument("assignment does not follow the tail of vertex " +
                                    std::to_string(u));
      }
      labels_.push(want[i], f.path()[i].second);
    }
  }

  // Multiplies p by the R factor of y and the Q factors of the edges whose
  // deeper endpoint is y. Depends only on labels of y and its ancestors.
  void apply_phi(Vertex y, Poly& p) const {
    const Label ly = labels_[y];
    const int cy = label_copies(ly);
    if (cy == 0) {
      p.scale(two_);
      return;
    }
    const int side = label_side(ly);
    for (const UpEdge& e : up_[y]) {
      const Label lx = labels_[e.other];
      const int cx = label_copies(lx);
      if (cx == 0 || label_side(lx) != side) continue;
      p.mul_binomial(e.weight, 1, 1, coeff_ij_[cx * cy == 1 ? 0 : (cx * cy == 2 ? 1 : 2)]);
    }
    if (cy == 2) p.mul_binomial(0, 1, 0, ring_.one());
  }

  // target += scale * mult * P(u, labels), mult absent meaning 1.
  void exclusive_into(Vertex u, Poly& target, const Poly* mult, const Coeff& scale) {
    ++stats_.exclusive_calls;
    labels_.push(u, Label::kZero);
    for (int s = 0; s < 5; ++s) {
      labels_.set_top(kLabels[s]);
      inclusive_into(u, target, mult, ring_.mul(scale, coeffs_[s]));
    }
    labels_.pop();
  }

  // target += scale * mult * P[u, labels] with the Q/R factors of vertices
  // strictly above u left out (callers apply those).
  void inclusive_into(Vertex u, Poly& target, const Poly* mult, const Coeff& scale) {
    ++stats_.inclusive_calls;
    if (t_->is_leaf(u)) {
      if (labels_[u] == Label::kZero) {
        // Only the R factor 2 applies; skip the copy.
        target.add_scaled(mult ? *mult : *unit_, ring_.mul(scale, two_));
        return;
      }
      Tracked p(stats_, mult ? *mult : one());
      apply_phi(u, p.p);
      target.add_scaled(p.p, scale);
      return;
    }
    product_into(t_->children(u), u, target, mult, scale);
  }

  // target += scale * mult * phi(owner) * prod_k P(k, labels). Children
  // after the first receive the running product as their multiplier, so at
  // most two polynomials per level stay alive, one with two children or fewer.
  void product_into(const std::vector<Vertex>& kids, Vertex owner, Poly& target, const Poly* mult,
                    const Coeff& scale) {
    if (kids.size() == 1) {
      Tracked r(stats_, zero());
      exclusive_into(kids.front(), r.p, nullptr, ring_.one());
      if (owner >= 0) apply_phi(owner, r.p);
      if (r.p.is_zero()) return;
      if (mult) {
        Tracked prod(stats_, *mult * r.p);
        target.add_scaled(prod.p, scale);
      } else {
        target.add_scaled(r.p, scale);
      }
      return;
    }
    Tracked acc(stats_, zero());
    exclusive_into(kids.front(), acc.p, nullptr, ring_.one());
    for (std::size_t i = 1; i + 1 < kids.size(); ++i) {
      if (acc.p.is_zero()) return;
      Tracked next(stats_, zero());
      exclusive_into(kids[i], next.p, &acc.p, ring_.one());
      acc.p = std::move(next.p);
    }
    if (owner >= 0) apply_phi(owner, acc.p);
    if (acc.p.is_zero()) return;
    if (mult) {
      Tracked prod(stats_, *mult * acc.p);
      acc.p = std::move(prod.p);
    }
    exclusive_into(kids.back(), target, &acc.p, scale);
  }

  const Graph* g_;
  const EliminationForest* t_;
  LeafPlan plan_;
  std::vector<int> weights_;
  Ring ring_;
  DegreeCaps caps_;
  TailAssignment labels_;
  std::vector<std::vector<UpEdge>> up_;
  std::array<Coeff, 5> coeffs_;
  Coeff two_;
  std::optional<Poly> unit_;
  std::array<Coeff, 3> coeff_ij_;
  CallStats stats_;
};

template <class Ring>
TruncatedPoly3<Ring> q_factor(const CountContext<Ring>& ctx, int edge_id, const TailAssignment& f) {
  return ctx.q_factor(edge_id, f);
}

template <class Ring>
TruncatedPoly3<Ring> r_factor(const CountContext<Ring>& ctx, Vertex x, const TailAssignment& f) {
  return ctx.r_factor(x, f);
}

template <class Ring>
TruncatedPoly3<Ring> leaf_poly(const CountContext<Ring>& ctx, Vertex u, const TailAssignment& f) {
  return ctx.leaf_poly(u, f);
}

template <class Ring>
TruncatedPoly3<Ring> compute_exclusive(CountContext<Ring>& ctx, Vertex u, const TailAssignment& f) {
  return ctx.compute_exclusive(u, f);
}

template <class Ring>
TruncatedPoly3<Ring> compute_inclusive(CountContext<Ring>& ctx, Vertex u, const TailAssignment& f) {
  return ctx.compute_inclusive(u, f);
}

template <class Ring>
TruncatedPoly3<Ring> forest_poly(CountContext<Ring>& ctx) {
  return ctx.forest_poly();
}

}  // namespace tdham
