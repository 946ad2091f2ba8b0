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

#include "tdham/driver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tdham/counter.hpp"
#include "tdham/poly.hpp"
#include "tdham/rings.hpp"

namespace tdham {

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kHamCycle:
      return "hamcycle";
    case ProblemKind::kHamPath:
      return "hampath";
    case ProblemKind::kLongCycle:
      return "longcycle";
    case ProblemKind::kLongPath:
      return "longpath";
    case ProblemKind::kMinCycleCover:
      return "mincyclecover";
    case ProblemKind::kPartialCycleCover:
      return "pcc";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t run) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (run + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WeightFn sample_weights(const Graph& g, std::mt19937_64& rng) {
  const int m = g.edge_count();
  if (m == 0) throw std::invalid_argument("cannot sample weights for an edgeless graph");
  std::uniform_int_distribution<int> dist(1, 2 * m);
  WeightFn w(m);
  for (int& x : w) x = dist(rng);
  return w;
}

namespace {

// A cycle has at least three vertices, so more than l/3 cycles never fit.
int effective_k(int k, int l) { return std::min(k, l / 3); }

bool is_trivial(int k, int l, const Graph& g) {
  return l == 0 || l < 3 || l > g.vertex_count() || k == 0 || g.edge_count() == 0;
}

bool trivial_answer(int l) { return l == 0; }

void check_params(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("k and l must be non-negative");
}

// One counting run answering every query; queries must be non-trivial.
std::vector<bool> counting_run(const Graph& g, const EliminationForest& t,
                               const std::vector<PccQuery>& queries, const WeightFn& w,
                               RunStats* stats) {
  const int n = g.vertex_count();
  const long long big_n = 2LL * g.edge_count();
  int l_max = 0;
  int k_max = 0;
  for (const PccQuery& q : queries) {
    l_max = std::max(l_max, q.l);
    k_max = std::max(k_max, effective_k(q.k, q.l));
  }
  if (big_n * l_max > kMaxCapA || n > kMaxCapBC) {
    throw std::invalid_argument("instance exceeds supported polynomial degrees");
  }
  if (static_cast<int>(w.size()) != g.edge_count()) {
    throw std::invalid_argument("weight map size differs from edge count");
  }
  const DegreeCaps caps{static_cast<int>(big_n * l_max), n, l_max};
  const int bits = n + k_max + 1;
  if (bits > kMaxResidueBits) throw std::invalid_argument("instance needs too wide a modulus");

  return with_ring(CoefficientRing::residue(bits), [&](auto ring) {
    using Poly = TruncatedPoly3<decltype(ring)>;
    CountContext ctx(g, t, w, ring, caps);
    const Poly p = ctx.forest_poly();
    if (stats) {
      stats->exclusive_calls = ctx.stats().exclusive_calls;
      stats->inclusive_calls = ctx.stats().inclusive_calls;
      stats->peak_polys = ctx.stats().peak_polys;
      stats->depth = t.depth();
      stats->bound = call_bound(n, t.depth());
    }
    std::vector<bool> out(queries.size(), false);
    for (const auto& term : p.terms()) {
      if (Poly::deg_b(term.key) != n) continue;
      const int a = Poly::deg_a(term.key);
      const int c = Poly::deg_c(term.key);
      const BigInt value = ring.to_integer(term.coeff);
      for (std::size_t i = 0; i < queries.size(); ++i) {
        const PccQuery& q = queries[i];
        if (out[i] || c != q.l || a < q.l || a > big_n * q.l) continue;
        const int test_bits = n + effective_k(q.k, q.l) + 1;
        const BigInt mask = (BigInt(1) << test_bits) - 1;
        if ((value & mask) != 0) out[i] = true;
      }
    }
    return out;
  });
}

void keep_heavier(RunStats& best, const RunStats& run) {
  if (run.total_calls() > best.total_calls() || best.total_calls() == 0) best = run;
}

RunStats forest_stats(const Graph& g, const EliminationForest& t) {
  RunStats s;
  s.depth = t.depth();
  s.bound = call_bound(g.vertex_count(), t.depth());
  return s;
}

}  // namespace

bool decide_pcc_once(const Graph& g, const EliminationForest& t, int k, int l, const WeightFn& w,
                     RunStats* stats) {
  if (l < 3 || l > g.vertex_count() || k < 1) {
    throw std::invalid_argument("decide_pcc_once needs 3 <= l <= n and k >= 1");
  }
  return counting_run(g, t, {PccQuery{k, l}}, w, stats).front();
}

Decision decide_pcc(const Graph& g, const EliminationForest& t, int k, int l, const SolveConfig& config) {
  check_params(k, l);
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be positive");
  Decision d;
  d.stats = forest_stats(g, t);
  if (is_trivial(k, l, g)) {
    d.answer = trivial_answer(l);
    return d;
  }
  RunStats best;
  for (int run = 0; run < config.repetitions && !d.answer; ++run) {
    std::mt19937_64 rng(derive_seed(config.seed, run));
    const WeightFn w = sample_weights(g, rng);
    RunStats s;
    d.answer = decide_pcc_once(g, t, k, l, w, &s);
    keep_heavier(best, s);
    ++d.runs;
  }
  d.stats = best;
  return d;
}

std::vector<bool> decide_pcc_batch(const Graph& g, const EliminationForest& t,
                                   const std::vector<PccQuery>& queries, const SolveConfig& config) {
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be positive");
  std::vector<bool> answer(queries.size(), false);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    check_params(queries[i].k, queries[i].l);
    if (is_trivial(queries[i].k, queries[i].l, g)) {
      answer[i] = trivial_answer(queries[i].l);
    } else {
      open.push_back(i);
    }
  }
  for (int run = 0; run < config.repetitions && !open.empty(); ++run) {
    std::mt19937_64 rng(derive_seed(config.seed, run));
    const WeightFn w = sample_weights(g, rng);
    std::vector<PccQuery> pending;
    for (std::size_t i : open) pending.push_back(queries[i]);
    const std::vector<bool> yes = counting_run(g, t, pending, w, nullptr);
    std::vector<std::size_t> still;
    for (std::size_t j = 0; j < open.size(); ++j) {
      if (yes[j]) {
        answer[open[j]] = true;
      } else {
        still.push_back(open[j]);
      }
    }
    open = std::move(still);
  }
  return answer;
}

namespace {

Decision long_path(const Graph& g, const EliminationForest& t, int l, const SolveConfig& config) {
  const int n = g.vertex_count();
  Decision d;
  d.stats = forest_stats(g, t);
  if (l == 0 || l > n) {
    d.answer = l == 0;
    return d;
  }
  if (l == 1 || l == 2) {
    d.answer = l == 1 ? n >= 1 : g.edge_count() >= 1;
    return d;
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex x = s + 1; x < n; ++x) {
      if (!g.adjacent(s, x)) pairs.emplace_back(s, x);
    }
  }
  // Enough repetitions per sub-call that a union bound over all of them
  // keeps the failure probability at 2^-T.
  const std::uint64_t sub_calls = pairs.size() + 1;
  int extra = 0;
  while ((std::uint64_t{1} << extra) < 2 * sub_calls) ++extra;
  const std::uint64_t stream = derive_seed(config.seed, 0x70617468ULL);

  RunStats best;
  auto run = [&](const Graph& h, const EliminationForest& f, std::uint64_t index) {
    SolveConfig sub{derive_seed(stream, index), config.repetitions + extra};
    Decision r = decide_pcc(h, f, 1, l, sub);
    keep_heavier(best, r.stats);
    d.runs += r.runs;
    return r.answer;
  };
  d.answer = run(g, t, 0);
  for (std::size_t i = 0; i < pairs.size() && !d.answer; ++i) {
    const auto [s, x] = pairs[i];
    const Graph h = add_edge(g, s, x);
    const EliminationForest f = augment_root(h, t, s);
    d.answer = run(h, f, i + 1);
  }
  d.stats = best;
  return d;
}

}  // namespace

Decision solve(const ProblemInstance& instance, const Graph& g,
               const std::optional<std::vector<Vertex>>& parents, const SolveConfig& config) {
  check_params(instance.k, instance.l);
  const EliminationForest t = parents ? validate_forest(g, *parents) : build_dfs_forest(g);
  const int n = g.vertex_count();
  switch (instance.kind) {
    case ProblemKind::kHamCycle:
      return decide_pcc(g, t, 1, n, config);
    case ProblemKind::kMinCycleCover:
      return decide_pcc(g, t, instance.k, n, config);
    case ProblemKind::kLongCycle:
      return decide_pcc(g, t, 1, instance.l, config);
    case ProblemKind::kPartialCycleCover:
      return decide_pcc(g, t, instance.k, instance.l, config);
    case ProblemKind::kLongPath:
      return long_path(g, t, instance.l, config);
    case ProblemKind::kHamPath:
      return long_path(g, t, n, config);
  }
  throw std::invalid_argument("unknown problem kind");
}

}  // namespace tdham
