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

// JSON formats.
//
// Graph:
//   {"vertices": [ids], "edges": [{"id": k, "tail": v, "head": v,
//    "left": f, "right": f}, ...], "source": v, "sink": v,
//    "outer_left": f, "outer_right": f}
// Vertex and facet ids are strings or integers; edge ids are exactly 1..n.
//
// Problem:
//   {"flow": <graph>, "control": <graph>, "modulus": m, "b": integer}

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ldk/balance.hpp"
#include "ldk/decision.hpp"
#include "ldk/linsolve.hpp"
#include "ldk/pbg.hpp"
#include "ldk/plane_graph.hpp"

namespace ldk {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace internal {

inline std::string id_name(const Json& value, const std::string& what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw FormatError(what + " must be a string or an integer");
}

inline bool is_canonical_integer(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) return false;
  if (s[start] == '0' && s.size() > start + 1) return false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  return s != "-0";
}

inline Json id_json(const std::string& name) {
  if (is_canonical_integer(name)) return std::stoll(name);
  return name;
}

inline const Json& field(const Json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return object.at(key);
}

}  // namespace internal

inline Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return x.convert_to<long long>();
  }
  return x.str();
}

inline BigInt big_int_from_json(const Json& value) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? BigInt(value.get<std::uint64_t>())
                                      : BigInt(value.get<long long>());
  }
  if (value.is_string()) {
    try {
      return BigInt(value.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("expected an integer");
}

inline Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline PlaneGraph graph_from_json(const Json& j) {
  using internal::field;
  using internal::id_name;
  PlaneGraph g;
  std::map<std::string, std::size_t> vertex_index;
  const Json& vertices = field(j, "vertices");
  if (!vertices.is_array()) throw FormatError("\"vertices\" must be an array");
  for (const auto& v : vertices) {
    const std::string name = id_name(v, "vertex id");
    if (!vertex_index.emplace(name, g.vertex_names.size()).second) {
      throw FormatError("duplicate vertex id " + name);
    }
    g.vertex_names.push_back(name);
  }
  auto vertex = [&](const Json& v) {
    const std::string name = id_name(v, "vertex id");
    auto it = vertex_index.find(name);
    if (it == vertex_index.end()) throw FormatError("unknown vertex " + name);
    return VertexId{it->second};
  };
  std::map<std::string, std::size_t> facet_index;
  auto facet = [&](const Json& f) {
    const std::string name = id_name(f, "facet id");
    auto [it, inserted] = facet_index.emplace(name, g.facet_names.size());
    if (inserted) g.facet_names.push_back(name);
    return FacetId{it->second};
  };

  g.source = vertex(field(j, "source"));
  g.sink = vertex(field(j, "sink"));
  g.outer_left = facet(field(j, "outer_left"));
  g.outer_right = facet(field(j, "outer_right"));

  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw FormatError("\"edges\" must be an array");
  std::map<long long, const Json*> by_id;
  for (const auto& e : edges) {
    const Json& id = field(e, "id");
    if (!id.is_number_integer()) throw FormatError("edge id must be an integer");
    if (!by_id.emplace(id.get<long long>(), &e).second) {
      throw FormatError("duplicate edge id " + std::to_string(id.get<long long>()));
    }
  }
  long long expected = 1;
  for (const auto& [id, e] : by_id) {
    if (id != expected++) throw FormatError("edge ids must be exactly 1..n");
    g.edges.push_back(Edge{vertex(field(*e, "tail")), vertex(field(*e, "head")),
                           facet(field(*e, "left")), facet(field(*e, "right"))});
  }
  return g;
}

inline Json to_json(const PlaneGraph& g) {
  Json out;
  out["vertices"] = Json::array();
  for (const auto& name : g.vertex_names) out["vertices"].push_back(internal::id_json(name));
  out["edges"] = Json::array();
  for (EdgeIndex j = 1; j <= g.edge_count(); ++j) {
    const Edge& e = g.edge(j);
    Json edge;
    edge["id"] = j;
    edge["tail"] = internal::id_json(g.vertex_names[e.tail.value]);
    edge["head"] = internal::id_json(g.vertex_names[e.head.value]);
    edge["left"] = internal::id_json(g.facet_names[e.left.value]);
    edge["right"] = internal::id_json(g.facet_names[e.right.value]);
    out["edges"].push_back(std::move(edge));
  }
  out["source"] = internal::id_json(g.vertex_names[g.source.value]);
  out["sink"] = internal::id_json(g.vertex_names[g.sink.value]);
  out["outer_left"] = internal::id_json(g.facet_names[g.outer_left.value]);
  out["outer_right"] = internal::id_json(g.facet_names[g.outer_right.value]);
  return out;
}

// Parses the problem without validating the graphs; see validate_problem.
inline PbgProblem problem_from_json(const Json& j) {
  const Json& modulus = internal::field(j, "modulus");
  if (!modulus.is_number_integer() || modulus.get<long long>() < 0) {
    throw FormatError("\"modulus\" must be a nonnegative integer");
  }
  PbgProblem p{graph_from_json(internal::field(j, "flow")),
               graph_from_json(internal::field(j, "control")),
               GroupSpec{modulus.get<std::uint64_t>()}, 1};
  p.b = p.group.reduce(big_int_from_json(internal::field(j, "b")));
  return p;
}

inline Json to_json(const PbgProblem& p) {
  Json out;
  out["flow"] = to_json(p.flow);
  out["control"] = to_json(p.control);
  out["modulus"] = p.group.modulus;
  out["b"] = to_json(p.b);
  return out;
}

inline Json graph_stats(const PlaneGraph& g) {
  Json out;
  out["vertices"] = g.vertex_count();
  out["edges"] = g.edge_count();
  out["facets"] = g.facet_count();
  out["inner_facets"] = g.facet_count() >= 2 ? g.facet_count() - 2 : 0;
  out["euler"] = static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count()) +
                 static_cast<long long>(g.facet_count());
  return out;
}

inline Json to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back(v.message);
  return out;
}

inline Json to_json(const SolutionReport& r) {
  Json out;
  out["solvable"] = r.solvable;
  out["group"] = GroupSpec{r.modulus}.name();
  out["particular"] = r.particular ? to_json(*r.particular) : Json(nullptr);
  out["kernel_generators"] = Json::array();
  for (const auto& g : r.kernel_generators) out["kernel_generators"].push_back(to_json(g));
  out["snf_diagonal"] = to_json(r.snf_diagonal);
  return out;
}

inline Json to_json(const BalanceTrace& trace) {
  Json out = Json::array();
  for (const auto& step : trace) {
    Json s;
    if (const auto* absorb = std::get_if<AbsorbStep>(&step)) {
      s["step"] = "absorb";
      s["variable"] = "x" + std::to_string(absorb->variable);
      s["side"] = absorb->side == Side::kLhs ? "lhs" : "rhs";
    } else {
      const auto& split = std::get<MatrixSplitStep>(step);
      s["step"] = "matrix_split";
      s["variable"] = "x" + std::to_string(split.variable);
      s["u"] = split.u;
      s["v"] = split.v;
      s["fresh"] = Json::array();
      for (const auto& row : split.fresh) {
        Json r = Json::array();
        for (VariableIndex var : row) r.push_back("x" + std::to_string(var));
        s["fresh"].push_back(std::move(r));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline Json to_json(const Verdict& v) {
  Json out;
  out["identity"] = to_string(v.original);
  out["balanced"] = to_string(v.balanced.identity);
  out["group"] = GroupSpec{v.modulus}.name();
  out["modulus"] = v.modulus;
  out["holds"] = v.holds;
  out["witness"] = to_json(v.witness);
  return out;
}

}  // namespace ldk
