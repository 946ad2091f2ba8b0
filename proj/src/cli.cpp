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

#include "tdham/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdham/driver.hpp"
#include "tdham/graph.hpp"
#include "tdham/oracle.hpp"
#include "tdham/treedepth.hpp"

namespace tdham {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const GraphError& e) {
    throw InputError(path + ": " + e.what());
  }
}

const std::map<std::string, ProblemKind>& problem_names() {
  static const std::map<std::string, ProblemKind> names = {
      {"hamcycle", ProblemKind::kHamCycle},           {"hampath", ProblemKind::kHamPath},
      {"longcycle", ProblemKind::kLongCycle},         {"longpath", ProblemKind::kLongPath},
      {"mincyclecover", ProblemKind::kMinCycleCover}, {"pcc", ProblemKind::kPartialCycleCover}};
  return names;
}

struct SolveArgs {
  std::string problem;
  std::string graph;
  std::string forest;
  std::optional<int> k;
  std::optional<int> l;
  std::uint64_t seed = 0;
  int repeat = 20;
  std::string stats;
};

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(a.graph);
  ProblemInstance inst;
  inst.kind = problem_names().at(a.problem);
  const bool needs_l = inst.kind == ProblemKind::kLongCycle || inst.kind == ProblemKind::kLongPath ||
                       inst.kind == ProblemKind::kPartialCycleCover;
  if (needs_l && !a.l) throw InputError(a.problem + " needs -l");
  if (inst.kind == ProblemKind::kPartialCycleCover && !a.k) throw InputError("pcc needs -k");
  inst.k = a.k.value_or(1);
  inst.l = a.l.value_or(0);
  if (inst.k < 0 || inst.l < 0) throw InputError("-k and -l must be non-negative");
  if (a.repeat < 1) throw InputError("--repeat must be positive");

  std::vector<Vertex> parents;
  if (!a.forest.empty()) {
    try {
      parents = parse_forest(read_file(a.forest), g.vertex_count());
      validate_forest(g, parents);
    } catch (const ForestError& e) {
      throw InputError(a.forest + ": " + e.what());
    }
  } else {
    const EliminationForest t = build_dfs_forest(g);
    err << "note: no forest given, using a DFS elimination forest of depth " << t.depth() << "\n";
    parents = t.parents();
  }

  const SolveConfig config{a.seed, a.repeat};
  const auto start = std::chrono::steady_clock::now();
  Decision d;
  try {
    d = solve(inst, g, parents, config);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  out << (d.answer ? "YES" : "NO") << "\n";
  if (!a.stats.empty()) {
    nlohmann::ordered_json j;
    j["answer"] = d.answer ? "YES" : "NO";
    j["seed"] = a.seed;
    j["repetitions"] = a.repeat;
    j["depth"] = d.stats.depth;
    j["exclusive_calls"] = d.stats.exclusive_calls;
    j["inclusive_calls"] = d.stats.inclusive_calls;
    j["bound"] = d.stats.bound;
    j["elapsed_ms"] = elapsed.count();
    j["peak_polys"] = d.stats.peak_polys;
    std::ofstream file(a.stats);
    if (!file) throw InputError("cannot write " + a.stats);
    file << j.dump(2) << "\n";
  }
  return kExitOk;
}

std::vector<int> load_weights(const std::string& path, const Graph& g) {
  if (path.empty()) return std::vector<int>(g.edge_count(), 1);
  std::istringstream in(read_file(path));
  std::vector<int> w;
  int x;
  while (in >> x) w.push_back(x);
  if (!in.eof() || static_cast<int>(w.size()) != g.edge_count()) {
    throw InputError(path + ": expected " + std::to_string(g.edge_count()) + " integer weights");
  }
  return w;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle and path problems on graphs with an elimination forest", "tdham"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Decide a problem");
  std::vector<std::string> kinds;
  for (const auto& [name, kind] : problem_names()) kinds.push_back(name);
  solve_cmd->add_option("problem", sa.problem, "Problem kind")->required()->check(CLI::IsMember(kinds));
  solve_cmd->add_option("--graph", sa.graph, "Graph file")->required();
  solve_cmd->add_option("--forest", sa.forest, "Elimination forest file");
  solve_cmd->add_option("-k", sa.k, "Cycle budget");
  solve_cmd->add_option("-l", sa.l, "Vertices to visit");
  solve_cmd->add_option("--seed", sa.seed, "Random seed");
  solve_cmd->add_option("--repeat", sa.repeat, "Independent repetitions");
  solve_cmd->add_option("--stats", sa.stats, "Write run statistics as JSON");

  std::string forest_graph;
  auto* forest_cmd = app.add_subcommand("forest", "Print a DFS elimination forest");
  forest_cmd->add_option("--graph", forest_graph, "Graph file")->required();

  std::string oracle_kind;
  std::string oracle_graph;
  std::string oracle_weights;
  int oracle_k = 1;
  int oracle_l = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force checks on small graphs");
  oracle_cmd->add_option("check", oracle_kind, "pcc, cw or mw")->required()->check(CLI::IsMember({"pcc", "cw", "mw"}));
  oracle_cmd->add_option("--graph", oracle_graph, "Graph file")->required();
  oracle_cmd->add_option("--weights", oracle_weights, "File with one weight per edge (default all 1)");
  oracle_cmd->add_option("-k", oracle_k, "Cycle budget");
  oracle_cmd->add_option("-l", oracle_l, "Vertices to visit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(sa, out, err);
    if (forest_cmd->parsed()) {
      out << build_dfs_forest(load_graph(forest_graph)).serialize();
      return kExitOk;
    }
    const Graph g = load_graph(oracle_graph);
    if (oracle_kind == "pcc") {
      out << (brute_pcc(g, oracle_k, oracle_l) ? "YES" : "NO") << "\n";
      return kExitOk;
    }
    const std::vector<int> w = load_weights(oracle_weights, g);
    if (oracle_kind == "cw") {
      long long max_w = 0;
      for (int x : w) max_w += x;
      for (long long target = 0; target <= max_w; ++target) {
        const BigInt c = brute_count_Cw(g, w, target, oracle_l);
        if (c != 0) out << target << " " << c << "\n";
      }
    } else {
      for (const auto& [key, count] : brute_Mw_table(g, w)) {
        if (key.second == oracle_l) out << key.first << " " << count << "\n";
      }
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace tdham
