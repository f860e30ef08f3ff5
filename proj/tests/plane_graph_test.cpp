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

#include "ldk/plane_graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

namespace ldk {
namespace {

bool has_code(const std::vector<Violation>& violations, Violation::Code code) {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

// Number of maximal paths computed on the term: joins multiply, meets add.
std::size_t path_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      return 1;
    case Term::Kind::kJoin:
      return path_count(t.left()) * path_count(t.right());
    case Term::Kind::kMeet:
      return path_count(t.left()) + path_count(t.right());
  }
  return 0;
}

PlaneGraph chain_of_two() { return graph_of_term(parse_term("x1 \\/ x2")).graph; }

TEST(GraphOfTermTest, SingleVariable) {
  const PlaneGraph g = graph_of_term(parse_term("x1")).graph;
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.facet_count(), 2u);
  EXPECT_EQ(g.edge(1), (Edge{g.source, g.sink, g.outer_left, g.outer_right}));
  EXPECT_TRUE(is_valid(g));
}

TEST(GraphOfTermTest, TermRCounts) {
  const PlaneGraph g = graph_of_term(parse_term(testing::kTermR)).graph;
  EXPECT_EQ(g.vertex_count(), 8u);
  EXPECT_EQ(g.edge_count(), 10u);
  EXPECT_EQ(g.facet_count(), 5u);
  EXPECT_TRUE(is_valid(g));
  const auto paths = maximal_paths(g);
  ASSERT_EQ(paths.size(), 4u);
  const std::set<EdgePath> expected = {{1, 2, 5}, {1, 3, 4, 5}, {6, 7, 10}, {8, 9, 10}};
  EXPECT_EQ(std::set<EdgePath>(paths.begin(), paths.end()), expected);
  EXPECT_EQ(paths.front(), (EdgePath{1, 2, 5}));
  EXPECT_EQ(first_maximal_path(g), paths.front());
}

TEST(GraphOfTermTest, JoinIsSeriesMeetIsParallel) {
  const PlaneGraph join = chain_of_two();
  EXPECT_EQ(join.edge(1).tail, join.source);
  EXPECT_EQ(join.edge(1).head, join.edge(2).tail);
  EXPECT_EQ(join.edge(2).head, join.sink);
  const PlaneGraph meet = graph_of_term(parse_term("x1 /\\ x2")).graph;
  EXPECT_EQ(meet.vertex_count(), 2u);
  EXPECT_EQ(meet.edge(1).left, meet.outer_left);
  EXPECT_EQ(meet.edge(1).right, meet.edge(2).left);
  EXPECT_EQ(meet.edge(2).right, meet.outer_right);
}

TEST(GraphOfTermTest, EdgeIndexMapFollowsVariableOrder) {
  const TermGraph tg = graph_of_term(parse_term("x7 \\/ (x2 /\\ x5)"));
  EXPECT_FALSE(tg.index_map.is_identity());
  EXPECT_EQ(tg.index_map.edge_of(2), 1u);
  EXPECT_EQ(tg.index_map.edge_of(5), 2u);
  EXPECT_EQ(tg.index_map.variable_of(3), 7u);
  EXPECT_EQ(tg.graph.edge(3).tail, tg.graph.source);
  EXPECT_THROW(tg.index_map.edge_of(4), std::out_of_range);
}

TEST(GraphOfTermTest, RejectsRepeatedVariables) {
  EXPECT_THROW(graph_of_term(parse_term("x1 /\\ (x2 \\/ x1)")), RepeatedVariable);
}

TEST(ValidateTest, DetectsEulerViolation) {
  PlaneGraph g = chain_of_two();
  g.facet_names.push_back("extra");
  EXPECT_TRUE(has_code(validate(g), Violation::Code::kEuler));
}

TEST(ValidateTest, DetectsCycleAndLoop) {
  PlaneGraph g = graph_of_term(parse_term("x1 \\/ x2 \\/ x3")).graph;
  g.edges[2].head = g.source;
  EXPECT_FALSE(is_valid(g));
  EXPECT_TRUE(has_code(validate(g), Violation::Code::kCycle));

  PlaneGraph loop = chain_of_two();
  loop.edges[0].head = loop.edges[0].tail;
  EXPECT_TRUE(has_code(validate(loop), Violation::Code::kLoop));
}

TEST(ValidateTest, DetectsBadReferenceAndOuterFacets) {
  PlaneGraph g = chain_of_two();
  g.edges[0].head = VertexId{17};
  EXPECT_TRUE(has_code(validate(g), Violation::Code::kBadReference));

  PlaneGraph same = chain_of_two();
  same.outer_right = same.outer_left;
  EXPECT_FALSE(is_valid(same));
}

TEST(ValidateTest, DetectsWrongSourceAndTooFewVertices) {
  PlaneGraph g = chain_of_two();
  std::swap(g.source, g.sink);
  EXPECT_FALSE(is_valid(g));
  EXPECT_TRUE(has_code(validate(g), Violation::Code::kSource));

  PlaneGraph tiny;
  tiny.vertex_names = {"s"};
  tiny.facet_names = {"L", "R"};
  tiny.outer_right = FacetId{1};
  EXPECT_TRUE(has_code(validate(tiny), Violation::Code::kTooFewVertices));
}

TEST(ValidateTest, DetectsSwappedFacetSides) {
  PlaneGraph g = graph_of_term(parse_term("x1 /\\ x2")).graph;
  std::swap(g.edges[0].left, g.edges[0].right);
  EXPECT_FALSE(is_valid(g));
}

TEST(DualGraphTest, DualOfTermRIsGraphOfDualTerm) {
  const PlaneGraph g = graph_of_term(parse_term(testing::kTermR)).graph;
  const PlaneGraph d = dual_graph(g);
  EXPECT_TRUE(is_valid(d));
  EXPECT_EQ(d.vertex_count(), 5u);
  EXPECT_EQ(d.facet_count(), 8u);
  EXPECT_TRUE(iso_check(d, graph_of_term(parse_term(testing::kTermRDual)).graph));
  EXPECT_FALSE(iso_check(g, graph_of_term(parse_term(testing::kTermRDual)).graph));
}

TEST(DualGraphTest, SingleEdge) {
  const PlaneGraph g = graph_of_term(parse_term("x1")).graph;
  const PlaneGraph d = dual_graph(g);
  EXPECT_EQ(d.source.value, g.outer_left.value);
  EXPECT_EQ(d.sink.value, g.outer_right.value);
  EXPECT_EQ(d.edge(1).left.value, g.sink.value);
  EXPECT_EQ(d.edge(1).right.value, g.source.value);
  EXPECT_TRUE(is_valid(d));
}

TEST(TransposeGraphTest, ReversesEdgesAndSwapsSides) {
  const PlaneGraph g = graph_of_term(parse_term(testing::kTermR)).graph;
  const PlaneGraph t = transpose_graph(g);
  EXPECT_TRUE(is_valid(t));
  EXPECT_EQ(transpose_graph(t), g);
  EXPECT_EQ(maximal_paths(t).size(), 4u);
}

TEST(MaximalPathsTest, LimitIsEnforced) {
  const PlaneGraph g = graph_of_term(parse_term(testing::kTermR)).graph;
  EXPECT_NO_THROW(maximal_paths(g, 4));
  try {
    maximal_paths(g, 3);
    FAIL() << "expected PathLimitExceeded";
  } catch (const PathLimitExceeded& e) {
    EXPECT_EQ(e.limit(), 3u);
  }
}

TEST(DotExportTest, ContainsLayoutAndLabels) {
  const std::string dot = dot_export(chain_of_two(), DotOptions{"chain", true});
  EXPECT_NE(dot.find("digraph \"chain\""), std::string::npos);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("rank=min; n0"), std::string::npos);
  EXPECT_NE(dot.find("rank=max; n1"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n2 [label=\"1 (L|R)\"]"), std::string::npos);
}

// Properties over random repetition-free terms of up to 12 leaves.
TEST(PlaneGraphPropertyTest, TermGraphsAndDuals) {
  testing::Rng rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Term t = testing::random_repetition_free_term(rng, n);
    const PlaneGraph g = graph_of_term(t).graph;
    ASSERT_TRUE(is_valid(g)) << to_string(t);
    EXPECT_EQ(g.vertex_count() + g.facet_count(), g.edge_count() + 3);
    EXPECT_EQ(maximal_paths(g).size(), path_count(t));

    const PlaneGraph d = dual_graph(g);
    EXPECT_TRUE(is_valid(d)) << to_string(t);
    EXPECT_EQ(dual_graph(d), transpose_graph(g));
    EXPECT_TRUE(iso_check(d, graph_of_term(dual_term(t)).graph)) << to_string(t);
    EXPECT_EQ(maximal_paths(d).size(), path_count(dual_term(t)));
    EXPECT_TRUE(is_valid(transpose_graph(g)));
  }
}

}  // namespace
}  // namespace ldk
