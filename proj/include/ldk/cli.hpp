// Copyright 2026 The ldk Authors
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

// The `ldk` command line: normalize, graph, check, solve, paths.
//
// Reports are JSON on the output stream; human-readable lines go to the
// error stream. Exit codes:
//   0 success (a failing identity is still a success)
//   1 usage error
//   2 parse error (identity, term or JSON)
//   3 graph or problem validation error
//   4 internal consistency violation (duality or oracle disagreement)
//   5 path or enumeration limit exceeded

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldk/balance.hpp"
#include "ldk/decision.hpp"
#include "ldk/io.hpp"
#include "ldk/linsolve.hpp"
#include "ldk/pbg.hpp"
#include "ldk/plane_graph.hpp"
#include "ldk/subspace_lattice.hpp"
#include "ldk/term.hpp"

namespace ldk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kConsistency = 4,
  kLimit = 5,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace internal {

// Carries an exit code out of a command body.
struct Failure {
  int code;
  std::string message;
};

inline std::size_t default_path_limit() {
  if (const char* env = std::getenv("LDK_PATH_LIMIT")) {
    try {
      const long long value = std::stoll(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
  }
  return kDefaultPathLimit;
}

inline std::vector<Identity> parse_identities(const std::string& text) {
  try {
    return parse_identity(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, e.what()};
  }
}

inline Term parse_term_or_fail(const std::string& text) {
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, e.what()};
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kParse, "cannot open " + path};
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
}

inline bool is_prime_oracle_modulus(std::uint64_t m) { return m == 2 || m == 3 || m == 5; }

inline Json normalize(const std::string& text, Streams io) {
  Json report;
  report["command"] = "normalize";
  report["input"] = text;
  report["identities"] = Json::array();
  for (const Identity& id : parse_identities(text)) {
    const BalanceResult absorbed = absorb_missing(id);
    const BalanceResult balanced = one_balance(id);
    Json entry;
    entry["original"] = to_string(id);
    entry["absorbed"] = to_string(absorbed.identity);
    entry["balanced"] = to_string(balanced.identity);
    entry["one_balanced"] = is_one_balanced(balanced.identity);
    entry["trace"] = to_json(balanced.trace);
    report["identities"].push_back(std::move(entry));
    io.err << to_string(id) << "\n  => " << to_string(balanced.identity) << "\n";
  }
  report["status"] = "ok";
  return report;
}

struct GraphOptions {
  std::string term;
  bool dual = false;
  std::string dot_path;
  bool facet_labels = false;
  bool emit_graph = false;
};

inline PlaneGraph graph_for_term(const std::string& text, bool dual) {
  const Term t = parse_term_or_fail(text);
  try {
    PlaneGraph g = graph_of_term(t).graph;
    return dual ? dual_graph(g) : g;
  } catch (const RepeatedVariable& e) {
    throw Failure{kValidation, std::string(e.what()) +
                                   " (each variable may label only one edge; balance the "
                                   "identity first with `normalize`)"};
  }
}

inline void require_valid(const PlaneGraph& g, const std::string& what) {
  const auto violations = validate(g);
  if (violations.empty()) return;
  std::string message = what + " failed validation:";
  for (const auto& v : violations) message += "\n  " + v.message;
  throw Failure{kValidation, message};
}

inline Json graph(const GraphOptions& options, Streams io) {
  const PlaneGraph g = graph_for_term(options.term, options.dual);
  require_valid(g, "graph");
  Json report;
  report["command"] = "graph";
  report["term"] = options.term;
  report["dual"] = options.dual;
  report["stats"] = graph_stats(g);
  if (options.emit_graph) report["graph"] = to_json(g);
  if (!options.dot_path.empty()) {
    std::ofstream dot(options.dot_path);
    if (!dot) throw Failure{kUsage, "cannot write " + options.dot_path};
    dot << dot_export(g, DotOptions{options.dual ? "dual" : "G", options.facet_labels});
    report["dot"] = options.dot_path;
  }
  report["status"] = "ok";
  io.err << g.vertex_count() << " vertices, " << g.edge_count() << " edges, " << g.facet_count()
         << " facets\n";
  return report;
}

struct CheckCommandOptions {
  std::string identity;
  std::vector<std::uint64_t> moduli{0};
  bool self_dual = false;
  std::uint32_t oracle_dimension = 0;
  std::string b = "1";
  bool facet_reduced = false;
  std::size_t path_limit = kDefaultPathLimit;
};

inline Json check(const CheckCommandOptions& options, Streams io) {
  const auto identities = parse_identities(options.identity);
  BigInt b;
  try {
    b = BigInt(options.b);
  } catch (const std::exception&) {
    throw Failure{kParse, "-b must be an integer"};
  }
  const CheckOptions check_options{
      options.facet_reduced ? AssemblyMode::kFacetReduced : AssemblyMode::kFull,
      options.path_limit};

  Json report;
  report["command"] = "check";
  report["input"] = options.identity;
  report["results"] = Json::array();
  for (const Identity& id : identities) {
    Json entry;
    entry["identity"] = to_string(id);
    entry["verdicts"] = Json::array();
    for (std::uint64_t m : options.moduli) {
      const Verdict verdict = check_identity(id, m, b, check_options);
      Json v = to_json(verdict);
      io.err << to_string(id) << " over " << GroupSpec{m}.name() << ": "
             << (verdict.holds ? "holds" : "fails") << "\n";
      if (options.self_dual) {
        try {
          const SelfDualityReport sd = check_self_duality(id, m, check_options);
          Json s;
          s["dual_identity"] = to_string(dual_identity(id));
          s["identity_holds"] = sd.primal.holds;
          s["dual_identity_holds"] = sd.dual.holds;
          s["problem_solvable"] = sd.problem_solvable;
          s["dual_problem_solvable"] = sd.dual_problem_solvable;
          s["agree"] = true;
          v["self_duality"] = std::move(s);
          io.err << "  dual " << to_string(dual_identity(id)) << ": "
                 << (sd.dual.holds ? "holds" : "fails") << " (agrees)\n";
        } catch (const DualityViolation& e) {
          throw Failure{kConsistency, e.what()};
        }
      }
      if (options.oracle_dimension > 0) {
        Json o;
        o["dimension"] = options.oracle_dimension;
        if (!is_prime_oracle_modulus(m)) {
          o["status"] = "skipped: modulus is not a supported prime (2, 3, 5)";
        } else {
          try {
            const SubspaceLattice lattice(static_cast<std::uint32_t>(m), options.oracle_dimension);
            const auto counterexample = find_counterexample(id, lattice);
            o["status"] = "ok";
            o["holds"] = !counterexample.has_value();
            if (counterexample) {
              Json w;
              for (const auto& [var, element] : *counterexample) {
                Json basis = Json::array();
                for (const auto& row : lattice.subspace(element).basis) basis.push_back(row);
                w["x" + std::to_string(var)] = std::move(basis);
              }
              o["counterexample"] = std::move(w);
            }
            io.err << "  oracle on F_" << m << "^" << options.oracle_dimension << ": "
                   << (counterexample ? "fails" : "holds") << "\n";
            if (verdict.holds && counterexample && b == 1) {
              throw Failure{kConsistency,
                            "solver says the identity holds but the subspace oracle found a "
                            "counterexample"};
            }
          } catch (const OracleCapExceeded& e) {
            o["status"] = std::string("skipped: ") + e.what();
          } catch (const std::invalid_argument& e) {
            throw Failure{kUsage, e.what()};
          }
        }
        v["oracle"] = std::move(o);
      }
      entry["verdicts"].push_back(std::move(v));
    }
    report["results"].push_back(std::move(entry));
  }
  report["status"] = "ok";
  return report;
}

struct SolveCommandOptions {
  std::string problem_path;
  std::optional<std::uint64_t> enumerate_cap;
  bool facet_reduced = false;
  std::size_t path_limit = kDefaultPathLimit;
};

inline Json solve(const SolveCommandOptions& options, Streams io) {
  const Json j = read_json_file(options.problem_path);
  PbgProblem p;
  try {
    p = problem_from_json(j);
  } catch (const FormatError& e) {
    throw Failure{kParse, options.problem_path + ": " + e.what()};
  }
  try {
    validate_problem(p);
  } catch (const InvalidProblem& e) {
    std::string message = e.what();
    for (std::size_t k = 1; k < e.violations().size(); ++k) {
      message += "\n  " + e.violations()[k].message;
    }
    throw Failure{kValidation, message};
  }
  const AssemblyMode mode =
      options.facet_reduced ? AssemblyMode::kFacetReduced : AssemblyMode::kFull;

  Json report;
  report["command"] = "solve";
  report["problem"] = options.problem_path;
  report["group"] = p.group.name();
  report["b"] = to_json(p.b);
  report["flow"] = graph_stats(p.flow);
  report["control"] = graph_stats(p.control);
  const SolutionReport solution = solve_problem(p, mode, options.path_limit);
  report["solution"] = to_json(solution);
  const SolutionReport dual_solution = solve_problem(dual_problem(p), mode, options.path_limit);
  report["dual_problem_solvable"] = dual_solution.solvable;
  io.err << "problem over " << p.group.name() << ": "
         << (solution.solvable ? "solvable" : "unsolvable") << "; dual problem: "
         << (dual_solution.solvable ? "solvable" : "unsolvable") << "\n";
  if (options.enumerate_cap) {
    if (p.group.modulus == 0) {
      throw Failure{kLimit, "cannot enumerate solutions over the infinite group Z"};
    }
    const auto solutions = enumerate_solutions(p, *options.enumerate_cap, options.path_limit);
    Json list = Json::array();
    for (const auto& a : solutions) list.push_back(to_json(a));
    report["enumerated"] = std::move(list);
    io.err << solutions.size() << " solution(s) by enumeration\n";
  }
  report["status"] = "ok";
  return report;
}

struct PathsCommandOptions {
  std::string term;
  std::string graph_path;
  bool dual = false;
  std::size_t path_limit = kDefaultPathLimit;
};

inline Json paths(const PathsCommandOptions& options, Streams io) {
  PlaneGraph g;
  if (!options.graph_path.empty()) {
    try {
      g = graph_from_json(read_json_file(options.graph_path));
    } catch (const FormatError& e) {
      throw Failure{kParse, options.graph_path + ": " + e.what()};
    }
    if (options.dual) {
      require_valid(g, "graph");
      g = dual_graph(g);
    }
  } else if (!options.term.empty()) {
    g = graph_for_term(options.term, options.dual);
  } else {
    throw Failure{kUsage, "paths needs a term or --graph"};
  }
  require_valid(g, "graph");
  Json report;
  report["command"] = "paths";
  report["input"] = options.graph_path.empty() ? options.term : options.graph_path;
  report["dual"] = options.dual;
  const auto found = maximal_paths(g, options.path_limit);
  Json list = Json::array();
  for (const auto& path : found) list.push_back(path);
  report["count"] = found.size();
  report["paths"] = std::move(list);
  report["status"] = "ok";
  io.err << found.size() << " maximal path(s)\n";
  return report;
}

}  // namespace internal

// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Lattice identities over Z_m via paired bipolar plane graphs", "ldk"};
  app.require_subcommand(1);
  std::size_t path_limit = internal::default_path_limit();
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  app.add_option("--path-limit", path_limit, "Maximum number of maximal paths (env LDK_PATH_LIMIT)")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", enum_cap, "Maximum m^n for solution enumeration")
      ->check(CLI::PositiveNumber);

  std::string normalize_text;
  auto* normalize_cmd = app.add_subcommand("normalize", "Balance an identity");
  normalize_cmd->add_option("identity", normalize_text, "e.g. \"x1 /\\ x2 <= x1\"")->required();

  internal::GraphOptions graph_options;
  auto* graph_cmd = app.add_subcommand("graph", "Build the plane graph of a repetition-free term");
  graph_cmd->add_option("term", graph_options.term)->required();
  graph_cmd->add_flag("--dual", graph_options.dual, "Use the dual graph");
  graph_cmd->add_option("--dot", graph_options.dot_path, "Write Graphviz output to this path");
  graph_cmd->add_flag("--facets", graph_options.facet_labels, "Label DOT edges with facets");
  graph_cmd->add_flag("--emit-graph", graph_options.emit_graph, "Include the graph JSON");

  internal::CheckCommandOptions check_options;
  auto* check_cmd = app.add_subcommand("check", "Decide an identity over Z_m");
  check_cmd->add_option("identity", check_options.identity)->required();
  check_cmd->add_option("--mod", check_options.moduli, "Comma-separated moduli (0 = Z)")
      ->delimiter(',');
  check_cmd->add_flag("--self-dual", check_options.self_dual, "Also check the dual identity");
  check_cmd->add_option("--oracle", check_options.oracle_dimension,
                        "Cross-check on the subspace lattice of F_m^d")
      ->check(CLI::Range(1, 3));
  check_cmd->add_option("-b", check_options.b, "Transported element (default 1)");
  check_cmd->add_flag("--facet-reduced", check_options.facet_reduced,
                      "Use one equation set per inner control facet");

  internal::SolveCommandOptions solve_options;
  std::uint64_t enumerate_cap = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a PBG problem file");
  solve_cmd->add_option("--problem", solve_options.problem_path)->required();
  auto* enumerate_opt = solve_cmd->add_option("--enumerate", enumerate_cap,
                                              "Enumerate all solutions (optional cap, default --enum-cap)")
                           ->expected(0, 1);
  solve_cmd->add_flag("--facet-reduced", solve_options.facet_reduced);

  internal::PathsCommandOptions paths_options;
  auto* paths_cmd = app.add_subcommand("paths", "List maximal directed paths");
  paths_cmd->add_option("term", paths_options.term);
  paths_cmd->add_option("--graph", paths_options.graph_path, "Graph JSON file");
  paths_cmd->add_flag("--dual", paths_options.dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, io.out, io.err) == 0 ? kOk : kUsage;
  }

  auto fail = [&io](int code, const std::string& message) {
    io.err << "error: " << message << "\n";
    Json report;
    report["status"] = "error";
    report["exit_code"] = code;
    report["message"] = message;
    io.out << report.dump(2) << "\n";
    return code;
  };

  try {
    Json report;
    if (*normalize_cmd) {
      report = internal::normalize(normalize_text, io);
    } else if (*graph_cmd) {
      report = internal::graph(graph_options, io);
    } else if (*check_cmd) {
      check_options.path_limit = path_limit;
      report = internal::check(check_options, io);
    } else if (*solve_cmd) {
      solve_options.path_limit = path_limit;
      if (enumerate_opt->count() > 0) {
        solve_options.enumerate_cap = enumerate_cap == 0 ? enum_cap : enumerate_cap;
      }
      report = internal::solve(solve_options, io);
    } else if (*paths_cmd) {
      paths_options.path_limit = path_limit;
      report = internal::paths(paths_options, io);
    }
    io.out << report.dump(2) << "\n";
    return kOk;
  } catch (const internal::Failure& f) {
    return fail(f.code, f.message);
  } catch (const PathLimitExceeded& e) {
    return fail(kLimit, e.what());
  } catch (const CapExceeded& e) {
    return fail(kLimit, e.what());
  }
}

}  // namespace ldk::cli
