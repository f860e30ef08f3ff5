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

// Systems of contents and paired-bipolar-graphs (PBG) problems.
//
// A PBG problem pairs a flow graph G with a control graph H having the same
// number n of edges; edge i of H corresponds to edge i of G. Capacities
// a = (a_1, ..., a_n) over the cyclic group Z_m solve the problem when every
// maximal directed path of H, used as a set of edges of G at full capacity,
// moves exactly b from the source of G to its sink and leaves every other
// vertex unchanged.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldk/integer.hpp"
#include "ldk/plane_graph.hpp"

namespace ldk {

// Z_m; m == 0 is Z and m == 1 is the trivial group.
struct GroupSpec {
  std::uint64_t modulus = 0;

  BigInt reduce(const BigInt& x) const { return reduce_mod(x, modulus); }
  std::string name() const {
    return modulus == 0 ? std::string("Z") : "Z_" + std::to_string(modulus);
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// A group element per vertex of a fixed graph.
class ContentSystem {
 public:
  ContentSystem(GroupSpec group, std::size_t vertex_count)
      : group_(group), values_(vertex_count, BigInt(0)) {}

  const GroupSpec& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  const BigInt& operator[](VertexId v) const { return values_.at(v.value); }
  const IntVector& values() const { return values_; }

  void add(VertexId v, const BigInt& x) {
    BigInt& slot = values_.at(v.value);
    slot = group_.reduce(slot + x);
  }

  BigInt total() const {
    BigInt sum = 0;
    for (const auto& x : values_) sum += x;
    return group_.reduce(sum);
  }

  bool is_zero() const {
    for (const auto& x : values_) {
      if (x != 0) return false;
    }
    return true;
  }

  ContentSystem& operator+=(const ContentSystem& other) {
    check_compatible(other);
    for (std::size_t v = 0; v < values_.size(); ++v) {
      values_[v] = group_.reduce(values_[v] + other.values_[v]);
    }
    return *this;
  }
  ContentSystem& operator-=(const ContentSystem& other) {
    check_compatible(other);
    for (std::size_t v = 0; v < values_.size(); ++v) {
      values_[v] = group_.reduce(values_[v] - other.values_[v]);
    }
    return *this;
  }
  friend ContentSystem operator+(ContentSystem a, const ContentSystem& b) { return a += b; }
  friend ContentSystem operator-(ContentSystem a, const ContentSystem& b) { return a -= b; }

  friend bool operator==(const ContentSystem&, const ContentSystem&) = default;

 private:
  void check_compatible(const ContentSystem& other) const {
    if (other.group_ != group_ || other.values_.size() != values_.size()) {
      throw std::invalid_argument("content systems over different graphs or groups");
    }
  }

  GroupSpec group_;
  IntVector values_;
};

// b at the source.
inline ContentSystem init_content(const PlaneGraph& g, GroupSpec group, const BigInt& b) {
  ContentSystem s(group, g.vertex_count());
  s.add(g.source, b);
  return s;
}

// b at the sink.
inline ContentSystem term_content(const PlaneGraph& g, GroupSpec group, const BigInt& b) {
  ContentSystem s(group, g.vertex_count());
  s.add(g.sink, b);
  return s;
}

// -b at the source, b at the sink.
inline ContentSystem transp_content(const PlaneGraph& g, GroupSpec group, const BigInt& b) {
  ContentSystem s(group, g.vertex_count());
  s.add(g.source, -b);
  s.add(g.sink, b);
  return s;
}

inline void check_capacities(const PlaneGraph& g, std::span<const BigInt> a) {
  if (a.size() != g.edge_count()) {
    throw std::invalid_argument("capacity vector has " + std::to_string(a.size()) +
                                " entries, graph has " + std::to_string(g.edge_count()) +
                                " edges");
  }
}

// -a_j at the tail of edge j, +a_j at its head.
inline ContentSystem edge_effect(const PlaneGraph& g, GroupSpec group,
                                 std::span<const BigInt> a, EdgeIndex j) {
  check_capacities(g, a);
  if (j < 1 || j > g.edge_count()) {
    throw std::out_of_range("edge index " + std::to_string(j) + " out of range");
  }
  ContentSystem s(group, g.vertex_count());
  s.add(g.edge(j).tail, -a[j - 1]);
  s.add(g.edge(j).head, a[j - 1]);
  return s;
}

inline ContentSystem set_effect(const PlaneGraph& g, GroupSpec group,
                                std::span<const BigInt> a, std::span<const EdgeIndex> edges) {
  check_capacities(g, a);
  ContentSystem s(group, g.vertex_count());
  for (EdgeIndex j : edges) {
    if (j < 1 || j > g.edge_count()) {
      throw std::out_of_range("edge index " + std::to_string(j) + " out of range");
    }
    s.add(g.edge(j).tail, -a[j - 1]);
    s.add(g.edge(j).head, a[j - 1]);
  }
  return s;
}

class InvalidProblem : public std::invalid_argument {
 public:
  InvalidProblem(const std::string& what, std::vector<Violation> violations = {})
      : std::invalid_argument(what), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct PbgProblem {
  PlaneGraph flow;     // G
  PlaneGraph control;  // H
  GroupSpec group;
  BigInt b = 1;

  std::size_t edge_count() const { return flow.edge_count(); }
};

// Checks the problem invariants; throws InvalidProblem.
inline void validate_problem(const PbgProblem& p) {
  if (p.flow.edge_count() != p.control.edge_count()) {
    throw InvalidProblem("flow graph has " + std::to_string(p.flow.edge_count()) +
                         " edges, control graph has " + std::to_string(p.control.edge_count()));
  }
  if (auto v = validate(p.flow); !v.empty()) {
    const std::string what = "invalid flow graph: " + v.front().message;
    throw InvalidProblem(what, std::move(v));
  }
  if (auto v = validate(p.control); !v.empty()) {
    const std::string what = "invalid control graph: " + v.front().message;
    throw InvalidProblem(what, std::move(v));
  }
}

inline PbgProblem make_problem(PlaneGraph flow, PlaneGraph control, GroupSpec group,
                               const BigInt& b) {
  PbgProblem p{std::move(flow), std::move(control), group, group.reduce(b)};
  validate_problem(p);
  return p;
}

// Checks candidate capacity vectors against every maximal control path.
// The paths are enumerated once, at construction.
class SolutionChecker {
 public:
  explicit SolutionChecker(const PbgProblem& p, std::size_t path_limit = kDefaultPathLimit)
      : problem_(p),
        paths_(maximal_paths(p.control, path_limit)),
        target_(transp_content(p.flow, p.group, p.b)) {}

  bool operator()(std::span<const BigInt> a) const {
    for (const auto& path : paths_) {
      if (set_effect(problem_.flow, problem_.group, a, path) != target_) return false;
    }
    return true;
  }

  const std::vector<EdgePath>& paths() const { return paths_; }

 private:
  PbgProblem problem_;
  std::vector<EdgePath> paths_;
  ContentSystem target_;
};

inline bool is_solution(const PbgProblem& p, std::span<const BigInt> a,
                        std::size_t path_limit = kDefaultPathLimit) {
  check_capacities(p.flow, a);
  IntVector reduced(a.begin(), a.end());
  for (auto& x : reduced) x = p.group.reduce(x);
  return SolutionChecker(p, path_limit)(reduced);
}

// Swap the two graphs and dualize both.
inline PbgProblem dual_problem(const PbgProblem& p) {
  return PbgProblem{dual_graph(p.control), dual_graph(p.flow), p.group, p.b};
}

inline PbgProblem transpose_problem(const PbgProblem& p) {
  return PbgProblem{transpose_graph(p.flow), transpose_graph(p.control), p.group, p.b};
}

}  // namespace ldk
