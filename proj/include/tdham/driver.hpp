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

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "tdham/graph.hpp"
#include "tdham/treedepth.hpp"

namespace tdham {

enum class ProblemKind { kHamCycle, kHamPath, kLongCycle, kLongPath, kMinCycleCover, kPartialCycleCover };

std::string_view problem_name(ProblemKind kind);

/// Problem with its parameters. k is the cycle budget and l the number of
/// vertices to visit; fields that a kind fixes are ignored for that kind.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::kHamCycle;
  int k = 1;
  int l = 0;
};

struct SolveConfig {
  std::uint64_t seed = 0;
  int repetitions = 20;
};

/// Edge weights indexed by edge id.
using WeightFn = std::vector<int>;

/// Instrumentation of one counting run.
struct RunStats {
  std::uint64_t exclusive_calls = 0;
  std::uint64_t inclusive_calls = 0;
  int depth = 0;
  std::uint64_t bound = 0;
  int peak_polys = 0;

  std::uint64_t total_calls() const { return exclusive_calls + inclusive_calls; }
};

struct Decision {
  bool answer = false;
  /// Stats of the run with the most calls; depth and bound describe the
  /// input forest when no counting run was needed.
  RunStats stats;
  int runs = 0;
};

/// Seed of run number `run` derived from a base seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t run);

/// Independent uniform weights in {1..2m}. Throws std::invalid_argument for
/// an edgeless graph.
WeightFn sample_weights(const Graph& g, std::mt19937_64& rng);

/// One counting run modulo 2^(n+k+1): true iff some coefficient at
/// (a, n, l), l <= a <= N*l, is nonzero. Never a false positive. Requires
/// 3 <= l <= n, k >= 1 and one weight per edge.
bool decide_pcc_once(const Graph& g, const EliminationForest& t, int k, int l, const WeightFn& w,
                     RunStats* stats = nullptr);

/// Partial Cycle Cover with up to config.repetitions independent runs.
Decision decide_pcc(const Graph& g, const EliminationForest& t, int k, int l, const SolveConfig& config);

struct PccQuery {
  int k = 1;
  int l = 0;
};

/// Answers several (k, l) queries on one graph, sharing each run's
/// polynomial between queries. Every answer equals the one decide_pcc
/// gives for the same query and config.
std::vector<bool> decide_pcc_batch(const Graph& g, const EliminationForest& t,
                                   const std::vector<PccQuery>& queries, const SolveConfig& config);

/// Dispatches a problem to Partial Cycle Cover. Builds a DFS forest when
/// parents is empty and validates it otherwise (throws ForestError).
Decision solve(const ProblemInstance& instance, const Graph& g,
               const std::optional<std::vector<Vertex>>& parents, const SolveConfig& config);

}  // namespace tdham
