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

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tdham/counter.hpp"
#include "tdham/oracle.hpp"

using namespace tdham;

namespace {

using IntCtx = CountContext<IntegerRing>;
using IntPoly = TruncatedPoly3<IntegerRing>;

constexpr Label Z = Label::kZero;
constexpr Label OL = Label::kOneL;
constexpr Label OR = Label::kOneR;
constexpr Label TL = Label::kTwoL;
constexpr Label TR = Label::kTwoR;

const DegreeCaps kSmallCaps{20, 6, 6};

TailAssignment tail(int n, std::vector<std::pair<Vertex, Label>> path) {
  return TailAssignment::from_path(n, path);
}

// Star with centre 0 (root) and leaves 1, 2.
struct Star {
  Graph g = testing::star_graph(2);
  EliminationForest t = validate_forest(g, {kNoParent, 0, 0});
};

// Every labelling of the given vertices, first vertex varying slowest.
std::vector<TailAssignment> all_assignments(int n, const std::vector<Vertex>& path) {
  std::vector<TailAssignment> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < path.size(); ++i) total *= 5;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::pair<Vertex, Label>> p;
    std::size_t rest = code;
    for (Vertex v : path) {
      p.emplace_back(v, kLabels[rest % 5]);
      rest /= 5;
    }
    out.push_back(TailAssignment::from_path(n, p));
  }
  return out;
}

}  // namespace

TEST_CASE("q factor examples") {
  const Graph g = testing::path_graph(2);
  const EliminationForest t = validate_forest(g, {kNoParent, 0});
  IntCtx seven(g, t, {7}, IntegerRing{}, kSmallCaps);
  CHECK(seven.q_factor(0, tail(2, {{0, TL}, {1, TL}})).debug_string() == "0 0 0 1\n7 1 1 4\n");
  IntCtx unit(g, t, {1}, IntegerRing{}, kSmallCaps);
  CHECK(unit.q_factor(0, tail(2, {{0, OL}, {1, TL}})).debug_string() == "0 0 0 1\n1 1 1 2\n");
  CHECK(unit.q_factor(0, tail(2, {{0, TL}, {1, TR}})) == unit.one());
  CHECK(unit.q_factor(0, tail(2, {{0, Z}, {1, TL}})) == unit.one());
  CHECK(unit.q_factor(0, tail(2, {{0, OR}, {1, OR}})).debug_string() == "0 0 0 1\n1 1 1 1\n");
  CHECK_THROWS_AS(unit.q_factor(0, tail(2, {{0, TL}})), std::out_of_range);
}

TEST_CASE("r factor examples") {
  const Graph g(1, {});
  const EliminationForest t = validate_forest(g, {kNoParent});
  IntCtx ctx(g, t, {}, IntegerRing{}, kSmallCaps);
  CHECK(ctx.r_factor(0, tail(1, {{0, TL}})).debug_string() == "0 0 0 1\n0 1 0 1\n");
  CHECK(ctx.r_factor(0, tail(1, {{0, TR}})).debug_string() == "0 0 0 1\n0 1 0 1\n");
  CHECK(ctx.r_factor(0, tail(1, {{0, Z}})).debug_string() == "0 0 0 2\n");
  CHECK(ctx.r_factor(0, tail(1, {{0, OR}})) == ctx.one());
  CHECK_THROWS_AS(ctx.r_factor(0, TailAssignment(1)), std::out_of_range);
}

TEST_CASE("leaf polynomial examples") {
  const Graph single(1, {});
  const EliminationForest st = validate_forest(single, {kNoParent});
  IntCtx one_vertex(single, st, {}, IntegerRing{}, kSmallCaps);
  CHECK(leaf_poly(one_vertex, 0, tail(1, {{0, TL}})).debug_string() == "0 0 0 1\n0 1 0 1\n");

  // a = 0 on top, b = 1 the leaf.
  const Graph edge = testing::path_graph(2);
  const EliminationForest et = validate_forest(edge, {kNoParent, 0});
  IntCtx ectx(edge, et, {1}, IntegerRing{}, kSmallCaps);
  const IntPoly expect = [&] {
    IntPoly q = ectx.one() + IntPoly::monomial(IntegerRing{}, kSmallCaps, 1, 1, 1, 2);
    IntPoly r = ectx.one() + IntPoly::monomial(IntegerRing{}, kSmallCaps, 0, 1, 0, 1);
    return q * r;
  }();
  CHECK(leaf_poly(ectx, 1, tail(2, {{0, OL}, {1, TL}})) == expect);

  Star s;
  IntCtx sctx(s.g, s.t, {1, 1}, IntegerRing{}, kSmallCaps);
  CHECK(leaf_poly(sctx, 2, tail(3, {{0, Z}, {2, TL}})).debug_string() == "0 0 0 1\n0 1 0 1\n");
  CHECK_THROWS_AS(leaf_poly(sctx, 0, tail(3, {{0, Z}})), std::invalid_argument);
}

TEST_CASE("exclusive examples") {
  const Graph single(1, {});
  const EliminationForest st = validate_forest(single, {kNoParent});
  IntCtx one_vertex(single, st, {}, IntegerRing{}, kSmallCaps);
  CHECK(compute_exclusive(one_vertex, 0, TailAssignment(1)).debug_string() == "0 1 0 2\n");

  Star s;
  IntCtx ctx(s.g, s.t, {1, 1}, IntegerRing{}, kSmallCaps);
  CHECK(compute_exclusive(ctx, 1, tail(3, {{0, Z}})).debug_string() == "0 1 0 4\n");

  IntCtx zero_w(s.g, s.t, {0, 0}, IntegerRing{}, kSmallCaps);
  CHECK(compute_exclusive(zero_w, 1, tail(3, {{0, TL}})).debug_string() ==
        "0 1 0 2\n0 2 0 2\n0 2 1 4\n0 3 1 4\n");
}

TEST_CASE("inclusive examples") {
  const Graph single(1, {});
  const EliminationForest st = validate_forest(single, {kNoParent});
  IntCtx one_vertex(single, st, {}, IntegerRing{}, kSmallCaps);
  CHECK(compute_inclusive(one_vertex, 0, tail(1, {{0, Z}})).debug_string() == "0 0 0 2\n");

  Star s;
  IntCtx ctx(s.g, s.t, {1, 1}, IntegerRing{}, kSmallCaps);
  CHECK(compute_inclusive(ctx, 0, tail(3, {{0, Z}})).debug_string() == "0 2 0 8\n");

  const Graph edge = testing::path_graph(2);
  const EliminationForest et = validate_forest(edge, {kNoParent, 0});
  IntCtx ectx(edge, et, {3}, IntegerRing{}, kSmallCaps);
  for (Label l : kLabels) {
    CHECK(compute_inclusive(ectx, 0, tail(2, {{0, l}})) == compute_exclusive(ectx, 1, tail(2, {{0, l}})));
  }
}

TEST_CASE("assignments must cover exactly the tail") {
  Star s;
  IntCtx ctx(s.g, s.t, {1, 1}, IntegerRing{}, kSmallCaps);
  CHECK_THROWS_AS(compute_exclusive(ctx, 1, TailAssignment(3)), std::invalid_argument);
  CHECK_THROWS_AS(compute_inclusive(ctx, 1, tail(3, {{0, Z}})), std::invalid_argument);
  CHECK_THROWS_AS(compute_exclusive(ctx, 1, tail(3, {{2, Z}})), std::invalid_argument);
  CHECK_THROWS_AS(IntCtx(s.g, s.t, {1}, IntegerRing{}, kSmallCaps), std::invalid_argument);
  CHECK_THROWS_AS(IntCtx(s.g, s.t, {1, -1}, IntegerRing{}, kSmallCaps), std::invalid_argument);
}

TEST_CASE("forest polynomial examples") {
  const Graph single(1, {});
  const EliminationForest st = validate_forest(single, {kNoParent});
  IntCtx a(single, st, {}, IntegerRing{}, {0, 1, 0});
  CHECK(a.forest_poly().coeff(0, 1, 0) == Integer(2));

  const Graph pair(2, {});
  const EliminationForest pt = validate_forest(pair, {kNoParent, kNoParent});
  IntCtx b(pair, pt, {}, IntegerRing{}, {0, 2, 0});
  CHECK(b.forest_poly().debug_string() == "0 2 0 4\n");

  const Graph k3 = testing::complete_graph(3);
  const EliminationForest kt = build_dfs_forest(k3);
  IntCtx c(k3, kt, {1, 1, 1}, IntegerRing{}, {18, 3, 3});
  CHECK(c.forest_poly().coeff(3, 3, 3) == Integer(16));

  const Graph empty(0, {});
  const EliminationForest et = validate_forest(empty, {});
  IntCtx e(empty, et, {}, IntegerRing{}, {0, 0, 0});
  CHECK(e.forest_poly() == e.one());
}

TEST_CASE("node polynomials match enumeration") {
  // Every node and every tail labelling on all graphs up to four vertices,
  // under both DFS and chain forests; random small weights.
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const Graph& g : nonisomorphic_graphs(n)) {
      for (int variant = 0; variant < 2; ++variant) {
        const EliminationForest t =
            variant == 0 ? build_dfs_forest(g) : validate_forest(g, testing::chain_parents(n));
        std::vector<int> w(g.edge_count());
        for (int& x : w) x = 1 + static_cast<int>(rng() % 3);
        const DegreeCaps caps{3 * g.edge_count(), 2 * n, n};
        IntCtx ctx(g, t, w, IntegerRing{}, caps);
        const LeafPlan plan = leaf_plan(g, t);
        for (Vertex u = 0; u < n; ++u) {
          for (const TailAssignment& f : all_assignments(n, tail_path(t, u, false))) {
            CHECK(compute_exclusive(ctx, u, f) == brute_node_poly(g, t, plan, w, caps, u, f, NodeMode::kExclusive));
            ++checked;
          }
          for (const TailAssignment& f : all_assignments(n, tail_path(t, u, true))) {
            CHECK(compute_inclusive(ctx, u, f) == brute_node_poly(g, t, plan, w, caps, u, f, NodeMode::kInclusive));
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("root coefficients are divisible by 2^l") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const Graph g = testing::random_graph(n, 0.6, rng);
    std::vector<int> w(g.edge_count());
    for (int& x : w) x = 1 + static_cast<int>(rng() % 4);
    const DegreeCaps caps{4 * n, n, n};
    const EliminationForest t = build_dfs_forest(g);
    IntCtx ctx(g, t, w, IntegerRing{}, caps);
    const IntPoly p = ctx.forest_poly();
    int seen = 0;
    for (const auto& term : p.terms()) {
      if (IntPoly::deg_b(term.key) != n) continue;
      const BigInt value = term.coeff.to_big();
      const int l = IntPoly::deg_c(term.key);
      CHECK(value % (BigInt(1) << l) == 0);
      ++seen;
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("call counts on chains") {
  for (int n = 1; n <= 7; ++n) {
    const Graph g = testing::complete_graph(n);
    const EliminationForest t = validate_forest(g, testing::chain_parents(n));
    CountContext<ResidueRing<1>> ctx(g, t, std::vector<int>(g.edge_count(), 1), ResidueRing<1>(n + 2),
                                     {2 * g.edge_count() * n, n, n});
    ctx.forest_poly();
    std::uint64_t pow5 = 1;
    for (int i = 0; i < n; ++i) pow5 *= 5;
    CHECK(ctx.stats().exclusive_calls == (pow5 - 1) / 4);
    CHECK(ctx.stats().inclusive_calls == 5 * (pow5 - 1) / 4);
    CHECK(ctx.stats().exclusive_calls + ctx.stats().inclusive_calls <= call_bound(n, n));
    CHECK(ctx.stats().peak_polys <= n + 2);
    CHECK(ctx.stats().live_polys == 0);
  }
  CHECK(call_bound(3, 2) == 150u);
  CHECK(call_bound(100, 40) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("call bound and live polynomials on random forests") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 8;
    const Graph g = testing::random_graph(n, 0.5, rng);
    const EliminationForest t =
        trial % 2 ? build_dfs_forest(g) : validate_forest(g, testing::min_depth_parents(g));
    CountContext<ResidueRing<1>> ctx(g, t, std::vector<int>(g.edge_count(), 2), ResidueRing<1>(12),
                                     {4 * n, n, n});
    ctx.forest_poly();
    CHECK(ctx.stats().exclusive_calls + ctx.stats().inclusive_calls <= call_bound(n, t.depth()));
    // Several roots are multiplied like the children of one extra level. A
    // running product and the next child's result coexist only below nodes
    // with three or more children.
    std::size_t widest = t.roots().size();
    for (Vertex v = 0; v < n; ++v) widest = std::max(widest, t.children(v).size());
    const int levels = t.depth() + (t.roots().size() > 1 ? 1 : 0);
    const int allowed = widest <= 2 ? levels + 2 : 2 * levels + 1;
    INFO(g.serialize() << t.serialize());
    CHECK(ctx.stats().peak_polys <= allowed);
  }
}

TEST_CASE("residue run equals the exact polynomial reduced") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 4;
    const Graph g = testing::random_graph(n, 0.7, rng);
    const EliminationForest t = build_dfs_forest(g);
    std::vector<int> w(g.edge_count());
    for (int& x : w) x = 1 + static_cast<int>(rng() % (2 * std::max(1, g.edge_count())));
    const DegreeCaps caps{2 * g.edge_count() * n, n, n};
    IntCtx exact(g, t, w, IntegerRing{}, caps);
    const IntPoly p = exact.forest_poly();
    for (int bits : {n + 2, 64, 100}) {
      with_ring(CoefficientRing::residue(bits), [&](auto ring) {
        CountContext<decltype(ring)> ctx(g, t, w, ring, caps);
        CHECK(ctx.forest_poly() == convert_ring(p, ring));
        return 0;
      });
    }
  }
}

TEST_CASE("label helpers") {
  CHECK(label_copies(Z) == 0);
  CHECK(label_copies(OR) == 1);
  CHECK(label_copies(TL) == 2);
  CHECK(label_side(Z) == -1);
  CHECK(label_side(OL) == 0);
  CHECK(label_side(TR) == 1);
  CHECK(label_name(TR) == "2R");
  TailAssignment f(4);
  f.push(2, OL);
  f.push(0, TR);
  CHECK(f.contains(0));
  CHECK_FALSE(f.contains(1));
  CHECK(f.at(2) == OL);
  CHECK_THROWS_AS(f.push(2, Z), std::invalid_argument);
  f.pop();
  CHECK_FALSE(f.contains(0));
  CHECK(f.size() == 1);
}
