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

#include "ldk/decision.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ldk {
namespace {

using testing::identity_of;

constexpr std::uint64_t kModuli[] = {0, 2, 3, 4, 6};

struct Golden {
  const char* identity;
  bool holds;
};

// Inequalities with a known verdict in every submodule lattice over Z_m, m >= 2.
const Golden kGolden[] = {
    {"x1 /\\ x2 <= x1", true},
    {"x1 <= x1 \\/ x2", true},
    {"x1 /\\ x2 <= x1 \\/ x2", true},
    {"x1 /\\ (x1 \\/ x2) <= x1", true},
    {"x1 <= x1 /\\ (x1 \\/ x2)", true},
    {"x1 \\/ (x2 /\\ x3) <= (x1 \\/ x2) /\\ (x1 \\/ x3)", true},
    {"(x1 /\\ x2) \\/ (x1 /\\ x3) <= x1 /\\ (x2 \\/ x3)", true},
    {testing::kModular, true},
    {"x1 /\\ (x2 \\/ (x1 /\\ x3)) <= (x1 /\\ x2) \\/ x3", true},
    {testing::kDistributive, false},
    {"(x1 \\/ x2) /\\ (x1 \\/ x3) <= x1 \\/ (x2 /\\ x3)", false},
    {"x1 \\/ x2 <= x1 /\\ x2", false},
    {"x1 <= x2", false},
    {"x1 <= x1 /\\ x2", false},
};

TEST(ProblemOfIdentityTest, RequiresBalancedIdentity) {
  EXPECT_THROW(problem_of_identity(identity_of(testing::kDistributive), GroupSpec{2}),
               std::invalid_argument);
  const PbgProblem p = problem_of_identity(identity_of("x1 /\\ x2 <= x1 \\/ x2"), GroupSpec{2});
  EXPECT_EQ(p.flow.edge_count(), 2u);
  EXPECT_EQ(p.flow.vertex_count(), 2u);
  EXPECT_EQ(p.control.vertex_count(), 3u);
}

TEST(CheckIdentityTest, GoldenVerdicts) {
  for (const auto& g : kGolden) {
    for (std::uint64_t m : kModuli) {
      const Verdict v = check_identity(identity_of(g.identity), m);
      EXPECT_EQ(v.holds, g.holds) << g.identity << " over m = " << m;
      EXPECT_TRUE(is_one_balanced(v.balanced.identity));
      EXPECT_EQ(v.witness.solvable, v.holds);
      if (v.holds) {
        EXPECT_TRUE(is_solution(problem_of_identity(v.balanced.identity, GroupSpec{m}),
                                *v.witness.particular));
      }
    }
  }
}

TEST(CheckIdentityTest, TrivialGroupSatisfiesEverything) {
  EXPECT_TRUE(check_identity(identity_of("x1 \\/ x2 <= x1 /\\ x2"), 1).holds);
}

TEST(CheckIdentityTest, FacetReducedModeAgrees) {
  const CheckOptions reduced{AssemblyMode::kFacetReduced, kDefaultPathLimit};
  for (const auto& g : kGolden) {
    EXPECT_EQ(check_identity(identity_of(g.identity), 0, 1, reduced).holds, g.holds)
        << g.identity;
  }
}

TEST(CheckIdentityTest, PathLimitPropagates) {
  CheckOptions tiny{AssemblyMode::kFull, 1};
  EXPECT_THROW(check_identity(identity_of("x1 \\/ x2 <= x1 /\\ x2"), 2, 1, tiny),
               PathLimitExceeded);
}

TEST(SelfDualityTest, GoldenIdentities) {
  for (const auto& g : kGolden) {
    const auto report = check_self_duality(identity_of(g.identity), 4);
    EXPECT_EQ(report.primal.holds, g.holds);
    EXPECT_EQ(report.dual.holds, g.holds);
    EXPECT_EQ(report.problem_solvable, report.dual_problem_solvable);
  }
}

TEST(OracleTest, EvaluateAndCounterexample) {
  const SubspaceLattice l(2, 2);
  const Identity dist = identity_of(testing::kDistributive);
  const auto witness = find_counterexample(dist, l);
  ASSERT_TRUE(witness.has_value());
  EXPECT_FALSE(l.leq(evaluate(dist.lhs, l, *witness), evaluate(dist.rhs, l, *witness)));
  EXPECT_TRUE(oracle_holds(identity_of(testing::kModular), l));
  EXPECT_TRUE(oracle_holds(dist, SubspaceLattice(2, 1)));
  EXPECT_THROW(oracle_holds(identity_of("x1 /\\ x2 /\\ x3 <= x4 \\/ x5 \\/ x6"), l),
               OracleCapExceeded);
}

TEST(MembershipTest, MeetOfTwoLines) {
  const SubspaceLattice l(2, 2);
  const Term p = parse_term("x1 \\/ x2");
  const LatticeAssignment lines = {{1, l.span_of({l.encode({1, 0})})},
                                   {2, l.span_of({l.encode({0, 1})})}};
  EXPECT_TRUE(direct_membership(p, l, lines, 0, l.encode({1, 1})));
  EXPECT_TRUE(membership_via_contents(p, l, lines, 0, l.encode({1, 1})));
  const Term q = parse_term("x1 /\\ x2");
  EXPECT_FALSE(direct_membership(q, l, lines, 0, l.encode({1, 1})));
  EXPECT_FALSE(membership_via_contents(q, l, lines, 0, l.encode({1, 1})));
  EXPECT_THROW(membership_via_contents(p, SubspaceLattice(2, 3), lines, 0, 0),
               OracleCapExceeded);
}

// Property: evaluating p on subspaces agrees with the existence of a
// content system on G_p, for every origin and target.
TEST(MembershipPropertyTest, ContentsMatchDirectEvaluation) {
  testing::Rng rng(606);
  for (auto p : {2u, 3u}) {
    const SubspaceLattice l(p, 2);
    std::uniform_int_distribution<SubspaceLattice::Element> pick(0, l.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + trial % 4;
      const Term t = testing::random_repetition_free_term(rng, n);
      LatticeAssignment subspaces;
      for (VariableIndex v = 1; v <= n; ++v) subspaces[v] = pick(rng);
      for (SubspaceLattice::Code origin = 0; origin < l.vector_count(); origin += 2) {
        for (SubspaceLattice::Code target = 0; target < l.vector_count(); ++target) {
          EXPECT_EQ(membership_via_contents(t, l, subspaces, origin, target),
                    direct_membership(t, l, subspaces, origin, target))
              << to_string(t);
        }
      }
    }
  }
}

// Property: a verdict of "holds" is never contradicted by the brute-force
// oracle, and an oracle counterexample always means "fails".
TEST(DecisionPropertyTest, SoundAgainstOracle) {
  testing::Rng rng(17);
  const SubspaceLattice f2(2, 2);
  const SubspaceLattice f3(3, 2);
  int holds = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Identity id = testing::random_identity(rng, 5, 3);
    const bool by_solver2 = check_identity(id, 2).holds;
    const bool by_solver3 = check_identity(id, 3).holds;
    if (by_solver2) {
      EXPECT_TRUE(oracle_holds(id, f2)) << to_string(id);
    }
    if (by_solver3) {
      EXPECT_TRUE(oracle_holds(id, f3)) << to_string(id);
    }
    if (!oracle_holds(id, f2)) {
      EXPECT_FALSE(by_solver2) << to_string(id);
    }
    holds += by_solver2 ? 1 : 0;
  }
  EXPECT_GT(holds, 0);
}

}  // namespace
}  // namespace ldk
