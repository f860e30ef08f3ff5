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

// Upward bipolar plane graphs, represented combinatorially.
//
// No coordinates are stored. Every edge carries the facet on its left and
// the facet on its right (walking from tail to head); the unbounded region
// is split into an outer-left and an outer-right facet by a curve joining
// source and sink. These labels are all that duality and transposition need.
//
// Edges are indexed 1..n. Vertices and facets are dense ids with display
// names.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldk/term.hpp"

namespace ldk {

template <class Tag>
struct DenseId {
  std::size_t value = 0;

  friend auto operator<=>(const DenseId&, const DenseId&) = default;
};

using VertexId = DenseId<struct VertexTag>;
using FacetId = DenseId<struct FacetTag>;

// 1-based.
using EdgeIndex = std::size_t;
using EdgePath = std::vector<EdgeIndex>;

struct Edge {
  VertexId tail;
  VertexId head;
  FacetId left;
  FacetId right;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct PlaneGraph {
  std::vector<std::string> vertex_names;
  std::vector<std::string> facet_names;
  // edges[k] is edge k + 1.
  std::vector<Edge> edges;
  VertexId source;
  VertexId sink;
  FacetId outer_left;
  FacetId outer_right;

  std::size_t vertex_count() const { return vertex_names.size(); }
  std::size_t facet_count() const { return facet_names.size(); }
  std::size_t edge_count() const { return edges.size(); }
  const Edge& edge(EdgeIndex j) const { return edges.at(j - 1); }

  friend bool operator==(const PlaneGraph&, const PlaneGraph&) = default;
};

struct Violation {
  enum class Code {
    kTooFewVertices,
    kBadReference,
    kLoop,
    kCycle,
    kSource,
    kSink,
    kDisconnected,
    kEuler,
    kOuterFacets,
    kOuterLeftBoundary,
    kOuterRightBoundary,
    kInnerFacetBoundary,
  };
  Code code;
  std::string message;
};

class PathLimitExceeded : public std::runtime_error {
 public:
  explicit PathLimitExceeded(std::size_t limit)
      : std::runtime_error("more than " + std::to_string(limit) +
                           " maximal directed paths"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

inline constexpr std::size_t kDefaultPathLimit = 10'000;

namespace internal {

// Orders `edges` into a directed path; nullopt if they do not form one.
inline std::optional<EdgePath> as_directed_path(const PlaneGraph& g,
                                                const std::vector<EdgeIndex>& edges) {
  if (edges.empty()) return std::nullopt;
  std::map<std::size_t, EdgeIndex> out_edge;
  std::map<std::size_t, int> in_degree;
  for (EdgeIndex j : edges) {
    const Edge& e = g.edge(j);
    if (!out_edge.emplace(e.tail.value, j).second) return std::nullopt;
    if (++in_degree[e.head.value] > 1) return std::nullopt;
  }
  std::optional<std::size_t> start;
  for (const auto& [v, j] : out_edge) {
    if (!in_degree.contains(v)) {
      if (start) return std::nullopt;
      start = v;
    }
  }
  if (!start) return std::nullopt;
  EdgePath path;
  std::size_t v = *start;
  while (path.size() <= edges.size()) {
    auto it = out_edge.find(v);
    if (it == out_edge.end()) break;
    path.push_back(it->second);
    v = g.edge(it->second).head.value;
  }
  if (path.size() != edges.size()) return std::nullopt;
  return path;
}

inline bool is_acyclic(const PlaneGraph& g) {
  std::vector<std::size_t> in_degree(g.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out(g.vertex_count());
  for (const Edge& e : g.edges) {
    ++in_degree[e.head.value];
    out[e.tail.value].push_back(e.head.value);
  }
  std::queue<std::size_t> ready;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (in_degree[v] == 0) ready.push(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.front();
    ready.pop();
    ++seen;
    for (std::size_t w : out[v]) {
      if (--in_degree[w] == 0) ready.push(w);
    }
  }
  return seen == g.vertex_count();
}

}  // namespace internal

inline std::vector<Violation> validate(const PlaneGraph& g) {
  using Code = Violation::Code;
  std::vector<Violation> violations;
  auto report = [&violations](Code code, std::string message) {
    violations.push_back({code, std::move(message)});
  };

  const std::size_t n_vertices = g.vertex_count();
  const std::size_t n_facets = g.facet_count();
  if (n_vertices < 2) report(Code::kTooFewVertices, "a bipolar graph needs at least 2 vertices");

  bool references_ok = g.source.value < n_vertices && g.sink.value < n_vertices &&
                       g.outer_left.value < n_facets && g.outer_right.value < n_facets;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    if (e.tail.value >= n_vertices || e.head.value >= n_vertices ||
        e.left.value >= n_facets || e.right.value >= n_facets) {
      report(Code::kBadReference, "edge " + std::to_string(k + 1) + " refers to an unknown vertex or facet");
      references_ok = false;
    }
  }
  if (!references_ok) {
    if (g.source.value >= n_vertices || g.sink.value >= n_vertices ||
        g.outer_left.value >= n_facets || g.outer_right.value >= n_facets) {
      report(Code::kBadReference, "source, sink or outer facet is unknown");
    }
    return violations;
  }

  bool has_loop = false;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (g.edges[k].tail == g.edges[k].head) {
      report(Code::kLoop, "edge " + std::to_string(k + 1) + " is a loop");
      has_loop = true;
    }
  }
  if (!has_loop && !internal::is_acyclic(g)) report(Code::kCycle, "graph has a directed cycle");

  std::vector<std::size_t> in_degree(n_vertices, 0);
  std::vector<std::size_t> out_degree(n_vertices, 0);
  for (const Edge& e : g.edges) {
    ++out_degree[e.tail.value];
    ++in_degree[e.head.value];
  }
  std::vector<std::size_t> sources;
  std::vector<std::size_t> sinks;
  for (std::size_t v = 0; v < n_vertices; ++v) {
    if (in_degree[v] == 0) sources.push_back(v);
    if (out_degree[v] == 0) sinks.push_back(v);
  }
  if (sources.size() != 1 || sources.front() != g.source.value) {
    report(Code::kSource, "the designated source must be the unique vertex without incoming edges");
  }
  if (sinks.size() != 1 || sinks.front() != g.sink.value) {
    report(Code::kSink, "the designated sink must be the unique vertex without outgoing edges");
  }

  std::vector<std::size_t> parent(n_vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t components = n_vertices;
  for (const Edge& e : g.edges) {
    const std::size_t a = find(e.tail.value);
    const std::size_t b = find(e.head.value);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components > 1) report(Code::kDisconnected, "graph is not connected");

  const long long euler = static_cast<long long>(n_vertices) -
                          static_cast<long long>(g.edges.size()) +
                          static_cast<long long>(n_facets);
  if (euler != 3) {
    report(Code::kEuler, "V - E + F = " + std::to_string(euler) + ", expected 3");
  }

  if (g.outer_left == g.outer_right) {
    report(Code::kOuterFacets, "outer-left and outer-right facets coincide");
  }

  std::vector<std::vector<EdgeIndex>> left_of(n_facets);   // edges with this facet on their left
  std::vector<std::vector<EdgeIndex>> right_of(n_facets);  // edges with this facet on their right
  for (EdgeIndex j = 1; j <= g.edge_count(); ++j) {
    left_of[g.edge(j).left.value].push_back(j);
    right_of[g.edge(j).right.value].push_back(j);
  }
  auto spans_source_to_sink = [&](const std::vector<EdgeIndex>& edges) {
    const auto path = internal::as_directed_path(g, edges);
    return path && g.edge(path->front()).tail == g.source && g.edge(path->back()).head == g.sink;
  };
  if (!spans_source_to_sink(left_of[g.outer_left.value]) ||
      !right_of[g.outer_left.value].empty()) {
    report(Code::kOuterLeftBoundary,
           "edges bordering the outer-left facet must form a source-to-sink path with the facet on their left");
  }
  if (!spans_source_to_sink(right_of[g.outer_right.value]) ||
      !left_of[g.outer_right.value].empty()) {
    report(Code::kOuterRightBoundary,
           "edges bordering the outer-right facet must form a source-to-sink path with the facet on their right");
  }
  for (std::size_t f = 0; f < n_facets; ++f) {
    if (f == g.outer_left.value || f == g.outer_right.value) continue;
    const auto left_half = internal::as_directed_path(g, right_of[f]);
    const auto right_half = internal::as_directed_path(g, left_of[f]);
    const bool ok = left_half && right_half &&
                    g.edge(left_half->front()).tail == g.edge(right_half->front()).tail &&
                    g.edge(left_half->back()).head == g.edge(right_half->back()).head;
    if (!ok) {
      report(Code::kInnerFacetBoundary,
             "facet " + g.facet_names[f] + " is not bounded by two directed paths with common endpoints");
    }
  }
  return violations;
}

inline bool is_valid(const PlaneGraph& g) { return validate(g).empty(); }

// Left-hand rule: e* goes from the facet on the left of e to the facet on its
// right. The dual's facet labels are chosen so that the double dual is
// exactly the transpose.
inline PlaneGraph dual_graph(const PlaneGraph& g) {
  PlaneGraph d;
  d.vertex_names = g.facet_names;
  d.facet_names = g.vertex_names;
  d.edges.reserve(g.edge_count());
  for (const Edge& e : g.edges) {
    d.edges.push_back(Edge{VertexId{e.left.value}, VertexId{e.right.value},
                           FacetId{e.head.value}, FacetId{e.tail.value}});
  }
  d.source = VertexId{g.outer_left.value};
  d.sink = VertexId{g.outer_right.value};
  d.outer_left = FacetId{g.sink.value};
  d.outer_right = FacetId{g.source.value};
  return d;
}

inline PlaneGraph transpose_graph(const PlaneGraph& g) {
  PlaneGraph t = g;
  for (Edge& e : t.edges) {
    std::swap(e.tail, e.head);
    std::swap(e.left, e.right);
  }
  std::swap(t.source, t.sink);
  std::swap(t.outer_left, t.outer_right);
  return t;
}

// All source-to-sink paths, depth first, edges tried by ascending index.
inline std::vector<EdgePath> maximal_paths(const PlaneGraph& g,
                                           std::size_t limit = kDefaultPathLimit) {
  std::vector<std::vector<EdgeIndex>> out(g.vertex_count());
  for (EdgeIndex j = 1; j <= g.edge_count(); ++j) out[g.edge(j).tail.value].push_back(j);

  std::vector<EdgePath> paths;
  EdgePath current;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (out[v].empty()) {
      if (paths.size() == limit) throw PathLimitExceeded(limit);
      paths.push_back(current);
      return;
    }
    for (EdgeIndex j : out[v]) {
      current.push_back(j);
      walk(g.edge(j).head.value);
      current.pop_back();
    }
  };
  walk(g.source.value);
  return paths;
}

// The leftmost maximal path, without enumerating the others.
inline EdgePath first_maximal_path(const PlaneGraph& g) {
  EdgePath path;
  VertexId v = g.source;
  for (;;) {
    std::optional<EdgeIndex> next;
    for (EdgeIndex j = 1; j <= g.edge_count(); ++j) {
      if (g.edge(j).tail == v) {
        next = j;
        break;
      }
    }
    if (!next) return path;
    path.push_back(*next);
    v = g.edge(*next).head;
  }
}

// True iff sending edge i of `a` to edge i of `b` induces a bijection of
// vertices that preserves tails and heads.
inline bool iso_check(const PlaneGraph& a, const PlaneGraph& b) {
  if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) return false;
  std::vector<std::optional<std::size_t>> forward(a.vertex_count());
  std::vector<std::optional<std::size_t>> backward(b.vertex_count());
  auto bind = [&](VertexId x, VertexId y) {
    if (x.value >= forward.size() || y.value >= backward.size()) return false;
    auto& f = forward[x.value];
    auto& r = backward[y.value];
    if (f && *f != y.value) return false;
    if (r && *r != x.value) return false;
    f = y.value;
    r = x.value;
    return true;
  };
  for (EdgeIndex j = 1; j <= a.edge_count(); ++j) {
    if (!bind(a.edge(j).tail, b.edge(j).tail) || !bind(a.edge(j).head, b.edge(j).head)) {
      return false;
    }
  }
  return std::all_of(forward.begin(), forward.end(), [](const auto& f) { return f.has_value(); });
}

// Maps the variables of a term onto edge indices 1..n by ascending variable
// index; the identity map when the variables are exactly x1..xn.
class EdgeIndexMap {
 public:
  EdgeIndexMap() = default;
  explicit EdgeIndexMap(const std::set<VariableIndex>& vars) : variables_(vars.begin(), vars.end()) {}

  std::size_t size() const { return variables_.size(); }
  VariableIndex variable_of(EdgeIndex j) const { return variables_.at(j - 1); }
  EdgeIndex edge_of(VariableIndex var) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), var);
    if (it == variables_.end() || *it != var) {
      throw std::out_of_range("variable x" + std::to_string(var) + " has no edge");
    }
    return static_cast<EdgeIndex>(it - variables_.begin()) + 1;
  }
  bool is_identity() const {
    for (std::size_t k = 0; k < variables_.size(); ++k) {
      if (variables_[k] != k + 1) return false;
    }
    return true;
  }

  friend bool operator==(const EdgeIndexMap&, const EdgeIndexMap&) = default;

 private:
  std::vector<VariableIndex> variables_;
};

class RepeatedVariable : public std::invalid_argument {
 public:
  explicit RepeatedVariable(const std::string& term)
      : std::invalid_argument("term is not repetition-free: " + term) {}
};

struct TermGraph {
  PlaneGraph graph;
  EdgeIndexMap index_map;
};

namespace internal {

class TermGraphBuilder {
 public:
  explicit TermGraphBuilder(const EdgeIndexMap& map) : map_(map) {
    g_.vertex_names = {"s", "t"};
    g_.facet_names = {"L", "R"};
    g_.edges.resize(map.size());
    g_.source = VertexId{0};
    g_.sink = VertexId{1};
    g_.outer_left = FacetId{0};
    g_.outer_right = FacetId{1};
  }

  PlaneGraph build(const Term& t) {
    place(t, g_.source, g_.sink, g_.outer_left, g_.outer_right);
    return std::move(g_);
  }

 private:
  // Lays `t` out between `bottom` and `top`, with facet `left` on its left
  // and `right` on its right.
  void place(const Term& t, VertexId bottom, VertexId top, FacetId left, FacetId right) {
    switch (t.kind()) {
      case Term::Kind::kVariable:
        g_.edges[map_.edge_of(t.index()) - 1] = Edge{bottom, top, left, right};
        return;
      case Term::Kind::kJoin: {
        // Series: the right operand sits atop the left one.
        const VertexId middle{g_.vertex_names.size()};
        g_.vertex_names.push_back("v" + std::to_string(middle.value - 1));
        place(t.left(), bottom, middle, left, right);
        place(t.right(), middle, top, left, right);
        return;
      }
      case Term::Kind::kMeet: {
        // Parallel: the left operand lies left of the right one.
        const FacetId between{g_.facet_names.size()};
        g_.facet_names.push_back("F" + std::to_string(between.value - 1));
        place(t.left(), bottom, top, left, between);
        place(t.right(), bottom, top, between, right);
        return;
      }
    }
  }

  const EdgeIndexMap& map_;
  PlaneGraph g_;
};

}  // namespace internal

inline TermGraph graph_of_term(const Term& t, const EdgeIndexMap& map) {
  if (!is_repetition_free(t)) throw RepeatedVariable(to_string(t));
  internal::TermGraphBuilder builder(map);
  return TermGraph{builder.build(t), map};
}

inline TermGraph graph_of_term(const Term& t) { return graph_of_term(t, EdgeIndexMap(variables(t))); }

struct DotOptions {
  std::string name = "G";
  bool facet_labels = false;
};

// Graphviz text: edges labeled by index, source on the bottom rank and sink
// on the top rank.
inline std::string dot_export(const PlaneGraph& g, const DotOptions& options = {}) {
  std::ostringstream out;
  out << "digraph \"" << options.name << "\" {\n";
  out << "  rankdir=BT;\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  n" << v << " [label=\"" << g.vertex_names[v] << "\"];\n";
  }
  out << "  { rank=min; n" << g.source.value << "; }\n";
  out << "  { rank=max; n" << g.sink.value << "; }\n";
  for (EdgeIndex j = 1; j <= g.edge_count(); ++j) {
    const Edge& e = g.edge(j);
    out << "  n" << e.tail.value << " -> n" << e.head.value << " [label=\"" << j;
    if (options.facet_labels) {
      out << " (" << g.facet_names[e.left.value] << "|" << g.facet_names[e.right.value] << ")";
    }
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ldk
