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

// Deciding lattice inequalities in submodule lattices over Z_m.
//
// A 1-balanced inequality p <= q holds in Sub M for every Z_m-module M
// exactly when the PBG problem (G_p, G_q, Z_m, 1) has a solution. Arbitrary
// inequalities are balanced first. The brute-force oracles here evaluate
// terms directly in the subspace lattice of F_p^d and never touch the graph
// pipeline, so they can be used to cross-check it.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldk/balance.hpp"
#include "ldk/linsolve.hpp"
#include "ldk/pbg.hpp"
#include "ldk/plane_graph.hpp"
#include "ldk/subspace_lattice.hpp"
#include "ldk/term.hpp"

namespace ldk {

struct CheckOptions {
  AssemblyMode mode = AssemblyMode::kFull;
  std::size_t path_limit = kDefaultPathLimit;
};

struct Verdict {
  Identity original;
  BalanceResult balanced;
  std::uint64_t modulus = 0;
  bool holds = false;
  SolutionReport witness;
};

// Requires a 1-balanced identity. Edge i of both graphs is the i-th smallest
// variable.
inline PbgProblem problem_of_identity(const Identity& balanced, GroupSpec group,
                                      const BigInt& b = 1) {
  if (!is_one_balanced(balanced)) {
    throw std::invalid_argument("identity is not 1-balanced: " + to_string(balanced));
  }
  const EdgeIndexMap map(variables(balanced));
  return make_problem(graph_of_term(balanced.lhs, map).graph,
                      graph_of_term(balanced.rhs, map).graph, group, b);
}

inline Verdict check_identity(const Identity& id, std::uint64_t modulus, const BigInt& b = 1,
                              const CheckOptions& options = {}) {
  Verdict verdict{id, one_balance(id), modulus, false, {}};
  const GroupSpec group{modulus};
  const PbgProblem problem = problem_of_identity(verdict.balanced.identity, group, b);
  verdict.witness = solve_problem(problem, options.mode, options.path_limit);
  verdict.holds = verdict.witness.solvable;
  return verdict;
}

class DualityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SelfDualityReport {
  Verdict primal;
  Verdict dual;
  // On the balanced primal instance: P and its dual problem.
  bool problem_solvable = false;
  bool dual_problem_solvable = false;
};

// Throws DualityViolation when the identity and its dual disagree, or when
// the balanced problem and its dual problem disagree.
inline SelfDualityReport check_self_duality(const Identity& id, std::uint64_t modulus,
                                            const CheckOptions& options = {}) {
  SelfDualityReport report{check_identity(id, modulus, 1, options),
                           check_identity(dual_identity(id), modulus, 1, options), false, false};
  const PbgProblem problem =
      problem_of_identity(report.primal.balanced.identity, GroupSpec{modulus});
  report.problem_solvable = solve_problem(problem, options.mode, options.path_limit).solvable;
  report.dual_problem_solvable =
      solve_problem(dual_problem(problem), options.mode, options.path_limit).solvable;
  if (report.primal.holds != report.dual.holds) {
    throw DualityViolation("identity and its dual disagree over " + GroupSpec{modulus}.name() +
                           ": " + to_string(id));
  }
  if (report.problem_solvable != report.dual_problem_solvable) {
    throw DualityViolation("PBG problem and its dual disagree over " +
                           GroupSpec{modulus}.name() + ": " + to_string(id));
  }
  return report;
}

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleVariableCap = 5;

// Assignment of lattice elements to variables.
using LatticeAssignment = std::map<VariableIndex, SubspaceLattice::Element>;

namespace internal {

// Postfix form of a term over dense variable slots.
class CompiledTerm {
 public:
  CompiledTerm(const Term& t, const std::map<VariableIndex, std::size_t>& slots) {
    compile(t, slots);
  }

  SubspaceLattice::Element evaluate(const SubspaceLattice& lattice,
                                    const std::vector<SubspaceLattice::Element>& values,
                                    std::vector<SubspaceLattice::Element>& stack) const {
    stack.clear();
    for (const Op& op : ops_) {
      if (op.kind == Term::Kind::kVariable) {
        stack.push_back(values[op.slot]);
        continue;
      }
      const auto right = stack.back();
      stack.pop_back();
      auto& left = stack.back();
      left = op.kind == Term::Kind::kJoin ? lattice.join(left, right) : lattice.meet(left, right);
    }
    return stack.back();
  }

 private:
  struct Op {
    Term::Kind kind;
    std::size_t slot;
  };

  void compile(const Term& t, const std::map<VariableIndex, std::size_t>& slots) {
    if (t.is_variable()) {
      ops_.push_back({Term::Kind::kVariable, slots.at(t.index())});
      return;
    }
    compile(t.left(), slots);
    compile(t.right(), slots);
    ops_.push_back({t.kind(), 0});
  }

  std::vector<Op> ops_;
};

}  // namespace internal

inline SubspaceLattice::Element evaluate(const Term& t, const SubspaceLattice& lattice,
                                         const LatticeAssignment& assignment) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      return assignment.at(t.index());
    case Term::Kind::kJoin:
      return lattice.join(evaluate(t.left(), lattice, assignment),
                          evaluate(t.right(), lattice, assignment));
    case Term::Kind::kMeet:
      return lattice.meet(evaluate(t.left(), lattice, assignment),
                          evaluate(t.right(), lattice, assignment));
  }
  throw std::logic_error("unreachable");
}

// An assignment violating lhs <= rhs, found by exhaustive search.
inline std::optional<LatticeAssignment> find_counterexample(
    const Identity& id, const SubspaceLattice& lattice,
    std::size_t var_cap = kDefaultOracleVariableCap) {
  const auto vars = variables(id);
  if (vars.size() > var_cap) {
    throw OracleCapExceeded(std::to_string(vars.size()) + " variables exceed the oracle cap " +
                            std::to_string(var_cap));
  }
  std::map<VariableIndex, std::size_t> slots;
  for (VariableIndex v : vars) slots.emplace(v, slots.size());
  const internal::CompiledTerm lhs(id.lhs, slots);
  const internal::CompiledTerm rhs(id.rhs, slots);

  std::vector<SubspaceLattice::Element> values(vars.size(), 0);
  std::vector<SubspaceLattice::Element> stack;
  for (;;) {
    if (!lattice.leq(lhs.evaluate(lattice, values, stack), rhs.evaluate(lattice, values, stack))) {
      LatticeAssignment witness;
      for (const auto& [var, slot] : slots) witness.emplace(var, values[slot]);
      return witness;
    }
    std::size_t k = values.size();
    while (k > 0 && ++values[k - 1] == lattice.size()) values[--k] = 0;
    if (k == 0) return std::nullopt;
  }
}

inline bool oracle_holds(const Identity& id, const SubspaceLattice& lattice,
                         std::size_t var_cap = kDefaultOracleVariableCap) {
  return !find_counterexample(id, lattice, var_cap).has_value();
}

// Whether target - origin lies in p(B_1, ..., B_n), evaluated in the lattice.
inline bool direct_membership(const Term& p, const SubspaceLattice& lattice,
                              const LatticeAssignment& subspaces, SubspaceLattice::Code origin,
                              SubspaceLattice::Code target) {
  return lattice.contains(evaluate(p, lattice, subspaces), lattice.subtract(target, origin));
}

// Whether some content system S on the vertices of G_p has S(source) = origin,
// S(sink) = target and S(head e_i) - S(tail e_i) in B_i for every edge,
// found by exhaustive search over the inner vertices.
inline bool membership_via_contents(const Term& p, const SubspaceLattice& lattice,
                                    const LatticeAssignment& subspaces,
                                    SubspaceLattice::Code origin, SubspaceLattice::Code target) {
  const TermGraph tg = graph_of_term(p);
  const PlaneGraph& g = tg.graph;
  if (lattice.dimension() > 2 || g.vertex_count() > 5) {
    throw OracleCapExceeded("content search is limited to d <= 2 and at most 5 vertices");
  }
  std::vector<SubspaceLattice::Element> bound(g.edge_count());
  for (EdgeIndex j = 1; j <= g.edge_count(); ++j) {
    bound[j - 1] = subspaces.at(tg.index_map.variable_of(j));
  }

  std::vector<std::size_t> inner;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (VertexId{v} != g.source && VertexId{v} != g.sink) inner.push_back(v);
  }
  std::vector<SubspaceLattice::Code> content(g.vertex_count(), 0);
  content[g.source.value] = origin;
  content[g.sink.value] = target;

  for (;;) {
    bool ok = true;
    for (EdgeIndex j = 1; j <= g.edge_count() && ok; ++j) {
      const Edge& e = g.edge(j);
      ok = lattice.contains(bound[j - 1],
                            lattice.subtract(content[e.head.value], content[e.tail.value]));
    }
    if (ok) return true;
    std::size_t k = inner.size();
    while (k > 0 && ++content[inner[k - 1]] == lattice.vector_count()) content[inner[--k]] = 0;
    if (k == 0) return false;
  }
}

}  // namespace ldk
