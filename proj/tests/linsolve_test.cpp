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

#include "ldk/linsolve.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

namespace ldk {
namespace {

using testing::ints;
using testing::naive_product;
using testing::rows_of;

IntMatrix matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<IntVector> out;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    out.push_back(ints(r));
    cols = r.size();
  }
  return IntMatrix::from_rows(out, cols);
}

IntMatrix random_matrix(testing::Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  }
  return m;
}

IntVector reduced(IntVector v, std::uint64_t m) {
  for (auto& x : v) x = reduce_mod(x, m);
  return v;
}

// Solutions of M a = r over Z_m by exhaustive search.
std::set<IntVector> brute_solutions(const IntMatrix& mat, const IntVector& rhs, std::uint64_t m) {
  std::set<IntVector> out;
  IntVector a(mat.cols(), BigInt(0));
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < mat.rows() && ok; ++i) {
      BigInt sum = 0;
      for (std::size_t j = 0; j < mat.cols(); ++j) sum += mat(i, j) * a[j];
      ok = reduce_mod(sum - rhs[i], m) == 0;
    }
    if (ok) out.insert(a);
    std::size_t k = a.size();
    while (k > 0 && ++a[k - 1] == static_cast<long long>(m)) a[--k] = 0;
    if (k == 0) return out;
  }
}

// particular + subgroup generated by the kernel generators, by closure.
std::set<IntVector> coset(const SolutionReport& r, std::uint64_t m) {
  std::set<IntVector> group = {IntVector(r.particular->size(), BigInt(0))};
  std::vector<IntVector> frontier(group.begin(), group.end());
  while (!frontier.empty()) {
    const IntVector x = frontier.back();
    frontier.pop_back();
    for (const auto& g : r.kernel_generators) {
      IntVector y = x;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] = reduce_mod(y[k] + g[k], m);
      if (group.insert(y).second) frontier.push_back(y);
    }
  }
  std::set<IntVector> out;
  for (const auto& x : group) {
    IntVector y = x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = reduce_mod(y[k] + (*r.particular)[k], m);
    out.insert(y);
  }
  return out;
}

void expect_valid_smith_form(const IntMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  EXPECT_EQ(naive_product(naive_product(rows_of(f.u), rows_of(m)), rows_of(f.v)), rows_of(f.d));
  if (m.rows() <= 6) {
    EXPECT_EQ(abs(testing::determinant(rows_of(f.u))), BigInt(1));
  }
  if (m.cols() <= 6) {
    EXPECT_EQ(abs(testing::determinant(rows_of(f.v))), BigInt(1));
  }
  BigInt previous = 1;
  bool seen_zero = false;
  for (std::size_t i = 0; i < f.d.rows(); ++i) {
    for (std::size_t j = 0; j < f.d.cols(); ++j) {
      if (i != j) {
        EXPECT_EQ(f.d(i, j), BigInt(0));
      }
    }
    if (i >= f.d.cols()) continue;
    const BigInt& di = f.d(i, i);
    EXPECT_GE(di, 0);
    if (di == 0) {
      seen_zero = true;
      continue;
    }
    EXPECT_FALSE(seen_zero) << "nonzero after zero on the diagonal";
    EXPECT_EQ(di % previous, BigInt(0));
    previous = di;
  }
}

TEST(IntMatrixTest, ProductMatchesSchoolbook) {
  testing::Rng rng(1);
  const IntMatrix a = random_matrix(rng, 3, 4, 5);
  const IntMatrix b = random_matrix(rng, 4, 2, 5);
  EXPECT_EQ(rows_of(a * b), naive_product(rows_of(a), rows_of(b)));
  EXPECT_EQ(a * IntMatrix::identity(4), a);
}

TEST(SmithNormalFormTest, ClassicExample) {
  const IntMatrix m = matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const SmithForm f = smith_normal_form(m);
  EXPECT_EQ(f.d, matrix({{2, 0, 0}, {0, 6, 0}, {0, 0, 12}}));
  expect_valid_smith_form(m);
}

TEST(SmithNormalFormTest, ZeroAndRectangular) {
  expect_valid_smith_form(IntMatrix(3, 2));
  expect_valid_smith_form(matrix({{0, 0, 3}}));
  expect_valid_smith_form(matrix({{4}, {6}}));
  EXPECT_EQ(smith_normal_form(matrix({{4}, {6}})).d, matrix({{2}, {0}}));
}

TEST(SmithNormalFormPropertyTest, RandomMatrices) {
  testing::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 6;
    const std::size_t cols = 1 + (trial / 6) % 6;
    expect_valid_smith_form(random_matrix(rng, rows, cols, 9));
  }
}

TEST(SolveTest, SingleEquation) {
  const IntMatrix two = matrix({{2}});
  EXPECT_FALSE(solve(two, ints({3}), GroupSpec{0}).solvable);
  const auto z5 = solve(two, ints({3}), GroupSpec{5});
  ASSERT_TRUE(z5.solvable);
  EXPECT_EQ(*z5.particular, ints({4}));
  EXPECT_TRUE(z5.kernel_generators.empty());
  EXPECT_FALSE(solve(two, ints({3}), GroupSpec{4}).solvable);
  const auto z4 = solve(two, ints({2}), GroupSpec{4});
  ASSERT_TRUE(z4.solvable);
  EXPECT_EQ(coset(z4, 4), (std::set<IntVector>{ints({1}), ints({3})}));
  EXPECT_TRUE(solve(two, ints({3}), GroupSpec{1}).solvable);
}

TEST(SolveTest, OverIntegersWithKernel) {
  const IntMatrix m = matrix({{1, 1, 0}, {0, 1, 1}});
  const auto r = solve(m, ints({2, 3}), GroupSpec{0});
  ASSERT_TRUE(r.solvable);
  EXPECT_EQ(m * std::span<const BigInt>(*r.particular), ints({2, 3}));
  ASSERT_EQ(r.kernel_generators.size(), 1u);
  EXPECT_EQ(m * std::span<const BigInt>(r.kernel_generators[0]), ints({0, 0}));
  EXPECT_THROW(solve(m, ints({1}), GroupSpec{0}), std::invalid_argument);
}

// Property: over Z_m the reported coset is exactly the brute-force solution set.
TEST(SolvePropertyTest, MatchesBruteForceModM) {
  testing::Rng rng(4242);
  const std::uint64_t moduli[] = {2, 3, 4, 6};
  int solvable = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const std::uint64_t m = moduli[trial % 4];
    const std::size_t rows = 1 + trial % 4;
    const std::size_t cols = 1 + (trial / 4) % 4;
    const IntMatrix mat = random_matrix(rng, rows, cols, 6);
    IntVector rhs(rows);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (auto& x : rhs) x = entry(rng);
    const auto expected = brute_solutions(mat, rhs, m);
    const auto report = solve(mat, rhs, GroupSpec{m});
    ASSERT_EQ(report.solvable, !expected.empty());
    if (!report.solvable) continue;
    ++solvable;
    EXPECT_EQ(coset(report, m), expected);
    EXPECT_EQ(reduced(*report.particular, m), *report.particular);
  }
  EXPECT_GT(solvable, 20);
}

TEST(SolvePropertyTest, ConsistentSystemsOverIntegers) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const IntMatrix mat = random_matrix(rng, 1 + trial % 5, 1 + trial % 4, 7);
    IntVector x = ints({3, -1, 4, 1});
    x.resize(mat.cols());
    const IntVector rhs = mat * std::span<const BigInt>(x);
    const auto report = solve(mat, rhs, GroupSpec{0});
    ASSERT_TRUE(report.solvable);
    EXPECT_EQ(mat * std::span<const BigInt>(*report.particular), rhs);
    for (const auto& g : report.kernel_generators) {
      EXPECT_EQ(mat * std::span<const BigInt>(g), IntVector(mat.rows(), BigInt(0)));
    }
  }
}

PbgProblem meet_below_join(std::uint64_t m) {
  return make_problem(graph_of_term(parse_term("x1 /\\ x2")).graph,
                      graph_of_term(parse_term("x1 \\/ x2")).graph, GroupSpec{m}, 1);
}

TEST(AssembleSystemTest, MeetBelowJoin) {
  const LinearSystem s = assemble_system(meet_below_join(2));
  EXPECT_EQ(s.matrix, matrix({{-1, -1}, {1, 1}}));
  EXPECT_EQ(s.rhs, ints({-1, 1}));
  const LinearSystem z = assemble_system(meet_below_join(0));
  EXPECT_EQ(z.rhs, ints({-1, 1}));
}

TEST(SolveProblemTest, MeetBelowJoin) {
  for (std::uint64_t m : {0, 2, 3, 4, 6}) {
    const PbgProblem p = meet_below_join(m);
    const auto r = solve_problem(p);
    ASSERT_TRUE(r.solvable) << m;
    EXPECT_TRUE(is_solution(p, *r.particular));
  }
}

TEST(SolveProblemTest, JoinBelowMeetUnsolvable) {
  const PbgProblem p = make_problem(graph_of_term(parse_term("x1 \\/ x2")).graph,
                                    graph_of_term(parse_term("x1 /\\ x2")).graph, GroupSpec{0}, 1);
  EXPECT_FALSE(solve_problem(p).solvable);
  EXPECT_FALSE(solve_problem(p, AssemblyMode::kFacetReduced).solvable);
}

TEST(EnumerateTest, MeetBelowJoinOverZ2) {
  EXPECT_EQ(enumerate_solutions(meet_below_join(2)),
            (std::vector<IntVector>{ints({0, 1}), ints({1, 0})}));
  EXPECT_THROW(enumerate_solutions(meet_below_join(0)), std::invalid_argument);
  EXPECT_THROW(enumerate_solutions(meet_below_join(3), 8), CapExceeded);
  EXPECT_EQ(enumerate_solutions(meet_below_join(3), 9).size(), 3u);
}

// Properties on balanced identity problems: the two assembly modes agree,
// and the solver's coset is the enumerated solution set.
TEST(SolveProblemPropertyTest, ModesAgreeAndMatchEnumeration) {
  testing::Rng rng(123);
  int solvable = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::uint64_t m = 2 + trial % 2;
    const Identity id = testing::random_balanced_identity(rng, 2 + trial % 5);
    const PbgProblem p = make_problem(graph_of_term(id.lhs).graph, graph_of_term(id.rhs).graph,
                                      GroupSpec{m}, 1);
    const auto full = solve_problem(p);
    const auto reduced_report = solve_problem(p, AssemblyMode::kFacetReduced);
    EXPECT_EQ(full.solvable, reduced_report.solvable) << to_string(id);
    const auto all = enumerate_solutions(p);
    ASSERT_EQ(full.solvable, !all.empty()) << to_string(id);
    if (!full.solvable) continue;
    ++solvable;
    EXPECT_EQ(coset(full, m), std::set<IntVector>(all.begin(), all.end())) << to_string(id);
    EXPECT_EQ(coset(reduced_report, m), std::set<IntVector>(all.begin(), all.end()));
  }
  EXPECT_GT(solvable, 0);
}

}  // namespace
}  // namespace ldk
