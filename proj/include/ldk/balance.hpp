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

// Rewriting an inequality into an equivalent 1-balanced one, where every
// variable occurs exactly once on each side.
//
// Two rewrites are used, both valid in every lattice:
//  * absorption: a variable x missing from q is added as q \/ (q /\ x);
//    a variable missing from p is added as p /\ (p \/ x);
//  * matrix split: a variable occurring u times on the left and v times on
//    the right is replaced by a u-by-v matrix W of fresh variables. The i-th
//    left occurrence becomes the meet of row i of W, the j-th right
//    occurrence becomes the join of column j.
//
// The rewriting is deterministic: variables are processed by ascending
// index, occurrences are numbered in left-to-right leaf order, fresh
// variables take the smallest indices absent from the current identity in
// row-major order, and inserted meets/joins associate to the right.

#pragma once

#include <cstddef>
#include <set>
#include <variant>
#include <vector>

#include "ldk/term.hpp"

namespace ldk {

enum class Side { kLhs, kRhs };

struct AbsorbStep {
  VariableIndex variable;
  // The side that was extended.
  Side side;

  friend bool operator==(const AbsorbStep&, const AbsorbStep&) = default;
};

struct MatrixSplitStep {
  VariableIndex variable;
  std::size_t u;  // occurrences on the left
  std::size_t v;  // occurrences on the right
  // u rows of v fresh variable indices.
  std::vector<std::vector<VariableIndex>> fresh;

  friend bool operator==(const MatrixSplitStep&, const MatrixSplitStep&) = default;
};

using BalanceStep = std::variant<AbsorbStep, MatrixSplitStep>;
using BalanceTrace = std::vector<BalanceStep>;

struct BalanceResult {
  Identity identity;
  BalanceTrace trace;
};

namespace internal {

inline Term fold_right(Term::Kind kind, const std::vector<VariableIndex>& vars) {
  Term acc = Term::variable(vars.back());
  for (std::size_t k = vars.size() - 1; k-- > 0;) {
    acc = kind == Term::Kind::kMeet ? Term::meet(Term::variable(vars[k]), acc)
                                    : Term::join(Term::variable(vars[k]), acc);
  }
  return acc;
}

// Replaces the k-th occurrence of `var` (0-based, left to right) with
// replacements[k].
inline Term substitute_occurrences(const Term& t, VariableIndex var,
                                   const std::vector<Term>& replacements,
                                   std::size_t& counter) {
  if (t.is_variable()) {
    return t.index() == var ? replacements.at(counter++) : t;
  }
  Term left = substitute_occurrences(t.left(), var, replacements, counter);
  Term right = substitute_occurrences(t.right(), var, replacements, counter);
  return t.kind() == Term::Kind::kJoin ? Term::join(std::move(left), std::move(right))
                                       : Term::meet(std::move(left), std::move(right));
}

}  // namespace internal

inline Identity apply_step(const Identity& id, const AbsorbStep& step) {
  const Term x = Term::variable(step.variable);
  if (step.side == Side::kRhs) {
    return Identity{id.lhs, Term::join(id.rhs, Term::meet(id.rhs, x))};
  }
  return Identity{Term::meet(id.lhs, Term::join(id.lhs, x)), id.rhs};
}

inline Identity apply_step(const Identity& id, const MatrixSplitStep& step) {
  std::vector<Term> rows;
  for (const auto& row : step.fresh) {
    rows.push_back(internal::fold_right(Term::Kind::kMeet, row));
  }
  std::vector<Term> columns;
  for (std::size_t j = 0; j < step.v; ++j) {
    std::vector<VariableIndex> column;
    for (std::size_t i = 0; i < step.u; ++i) column.push_back(step.fresh[i][j]);
    columns.push_back(internal::fold_right(Term::Kind::kJoin, column));
  }
  std::size_t lhs_counter = 0;
  std::size_t rhs_counter = 0;
  return Identity{
      internal::substitute_occurrences(id.lhs, step.variable, rows, lhs_counter),
      internal::substitute_occurrences(id.rhs, step.variable, columns, rhs_counter)};
}

inline Identity replay(Identity id, const BalanceTrace& trace) {
  for (const auto& step : trace) {
    id = std::visit([&id](const auto& s) { return apply_step(id, s); }, step);
  }
  return id;
}

// Makes both sides use the same set of variables.
inline BalanceResult absorb_missing(const Identity& id) {
  BalanceResult result{id, {}};
  const auto profile = occurrences(id);
  for (const auto& [var, counts] : profile) {
    if (counts.rhs == 0) {
      result.trace.push_back(AbsorbStep{var, Side::kRhs});
    } else if (counts.lhs == 0) {
      result.trace.push_back(AbsorbStep{var, Side::kLhs});
    } else {
      continue;
    }
    result.identity =
        apply_step(result.identity, std::get<AbsorbStep>(result.trace.back()));
  }
  return result;
}

inline BalanceResult one_balance(const Identity& id) {
  BalanceResult result = absorb_missing(id);
  for (;;) {
    const auto profile = occurrences(result.identity);
    auto bad = profile.end();
    for (auto it = profile.begin(); it != profile.end(); ++it) {
      if (it->second.lhs != 1 || it->second.rhs != 1) {
        bad = it;
        break;
      }
    }
    if (bad == profile.end()) break;

    MatrixSplitStep step{bad->first, bad->second.lhs, bad->second.rhs, {}};
    VariableIndex candidate = 1;
    for (std::size_t i = 0; i < step.u; ++i) {
      std::vector<VariableIndex> row;
      for (std::size_t j = 0; j < step.v; ++j) {
        while (profile.contains(candidate)) ++candidate;
        row.push_back(candidate++);
      }
      step.fresh.push_back(std::move(row));
    }
    result.identity = apply_step(result.identity, step);
    result.trace.push_back(std::move(step));
  }
  return result;
}

}  // namespace ldk
