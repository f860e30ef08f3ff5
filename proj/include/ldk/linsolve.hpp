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

// Exact solution of PBG problems as integer linear systems.
//
// The solution condition is linear in the capacities: for a control path pi
// and a flow vertex v, sum_{j in pi} c(v, j) a_j = transp(v), where c(v, j)
// is +1 if v is the head of flow edge j, -1 if it is the tail, 0 otherwise.
// Such a system M a = r is decided over Z and over Z_m from the Smith normal
// form U M V = D: with r' = U r, it is solvable iff each diagonal entry d_i
// satisfies gcd(d_i, m) | r'_i (and r'_i == 0 past the diagonal).

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldk/integer.hpp"
#include "ldk/pbg.hpp"

namespace ldk {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVector column(std::size_t j) const {
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[target] += factor * row[from]
  void add_row(std::size_t target, std::size_t from, const BigInt& factor) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(from, j) != 0) (*this)(target, j) += factor * (*this)(from, j);
    }
  }
  // col[target] += factor * col[from]
  void add_col(std::size_t target, std::size_t from, const BigInt& factor) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, from) != 0) (*this)(i, target) += factor * (*this)(i, from);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

  friend IntVector operator*(const IntMatrix& a, std::span<const BigInt> x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix dimension mismatch");
    IntVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * x[j];
    }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

struct LinearSystem {
  IntMatrix matrix;
  IntVector rhs;
};

enum class AssemblyMode { kFull, kFacetReduced };

namespace internal {

class SystemBuilder {
 public:
  explicit SystemBuilder(std::size_t cols) : cols_(cols) {}

  // Drops duplicates and trivial 0 = 0 rows; keeps first-seen order.
  void add(IntVector row, BigInt rhs) {
    const bool zero = std::all_of(row.begin(), row.end(), [](const BigInt& x) { return x == 0; });
    if (zero && rhs == 0) return;
    auto key = std::make_pair(row, rhs);
    if (!seen_.insert(key).second) return;
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
  }

  LinearSystem finish() { return LinearSystem{IntMatrix::from_rows(rows_, cols_), std::move(rhs_)}; }

 private:
  std::size_t cols_;
  std::set<std::pair<IntVector, BigInt>> seen_;
  std::vector<IntVector> rows_;
  IntVector rhs_;
};

// Coefficients of sum_{j in edges} sign * effect_j at every flow vertex.
inline std::vector<IntVector> effect_rows(const PlaneGraph& flow, std::span<const EdgeIndex> edges,
                                          int sign, std::vector<IntVector> rows) {
  for (EdgeIndex j : edges) {
    rows[flow.edge(j).head.value][j - 1] += sign;
    rows[flow.edge(j).tail.value][j - 1] -= sign;
  }
  return rows;
}

}  // namespace internal

inline LinearSystem assemble_system(const PbgProblem& p, AssemblyMode mode = AssemblyMode::kFull,
                                    std::size_t path_limit = kDefaultPathLimit) {
  const std::size_t n = p.edge_count();
  const std::size_t vertices = p.flow.vertex_count();
  const std::vector<IntVector> zero(vertices, IntVector(n));
  const BigInt b = p.group.reduce(p.b);
  auto target_at = [&](std::size_t v) {
    if (VertexId{v} == p.flow.source) return BigInt(-b);
    if (VertexId{v} == p.flow.sink) return b;
    return BigInt(0);
  };

  internal::SystemBuilder builder(n);
  auto add_path = [&](const EdgePath& path) {
    auto rows = internal::effect_rows(p.flow, path, 1, zero);
    for (std::size_t v = 0; v < vertices; ++v) builder.add(std::move(rows[v]), target_at(v));
  };

  if (mode == AssemblyMode::kFull) {
    for (const auto& path : maximal_paths(p.control, path_limit)) add_path(path);
    return builder.finish();
  }

  add_path(first_maximal_path(p.control));
  std::vector<std::vector<EdgeIndex>> left_half(p.control.facet_count());
  std::vector<std::vector<EdgeIndex>> right_half(p.control.facet_count());
  for (EdgeIndex j = 1; j <= p.control.edge_count(); ++j) {
    left_half[p.control.edge(j).right.value].push_back(j);
    right_half[p.control.edge(j).left.value].push_back(j);
  }
  for (std::size_t f = 0; f < p.control.facet_count(); ++f) {
    if (f == p.control.outer_left.value || f == p.control.outer_right.value) continue;
    auto rows = internal::effect_rows(p.flow, left_half[f], 1, zero);
    rows = internal::effect_rows(p.flow, right_half[f], -1, std::move(rows));
    for (std::size_t v = 0; v < vertices; ++v) builder.add(std::move(rows[v]), BigInt(0));
  }
  return builder.finish();
}

struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};

namespace internal {

// Diagonalizes `a` in place by unimodular row and column operations. Row
// operations are mirrored on `rows` (anything with swap_rows / add_row /
// negate_row), column operations on `cols`.
//
// Pivot: smallest nonzero absolute value in the remaining block, ties broken
// by lowest row, then lowest column.
template <class RowTracker>
void smith_eliminate(IntMatrix& a, RowTracker& rows, IntMatrix& cols) {
  const std::size_t diag = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      BigInt best;
      for (std::size_t i = t; i < a.rows(); ++i) {
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a(i, j) == 0) continue;
          BigInt mag = abs(a(i, j));
          if (!pivot || mag < best) {
            pivot = {i, j};
            best = std::move(mag);
          }
        }
      }
      if (!pivot) return;
      a.swap_rows(t, pivot->first);
      rows.swap_rows(t, pivot->first);
      a.swap_cols(t, pivot->second);
      cols.swap_cols(t, pivot->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        rows.add_row(i, t, -q);
        if (a(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        cols.add_col(j, t, -q);
        if (a(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < a.rows() && !offending; ++i) {
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
        }
      }
      if (!offending) break;
      a.add_row(t, *offending, 1);
      rows.add_row(t, *offending, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      rows.negate_row(t);
    }
  }
}

// Tracks row operations on a single right-hand side vector.
struct VectorRowTracker {
  IntVector& values;
  void swap_rows(std::size_t a, std::size_t b) { std::swap(values[a], values[b]); }
  void add_row(std::size_t target, std::size_t from, const BigInt& factor) {
    values[target] += factor * values[from];
  }
  void negate_row(std::size_t i) { values[i] = -values[i]; }
};

inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw std::domain_error("not invertible");
  BigInt x = old_s % m;
  if (x < 0) x += m;
  return x;
}

}  // namespace internal

// U * M * V = D with U, V unimodular and d_1 | d_2 | ... >= 0.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  internal::smith_eliminate(f.d, f.u, f.v);
  return f;
}

struct SolutionReport {
  bool solvable = false;
  std::uint64_t modulus = 0;
  std::optional<IntVector> particular;
  std::vector<IntVector> kernel_generators;
  IntVector snf_diagonal;
};

// Solves matrix * a = rhs over Z (m == 0) or Z_m.
inline SolutionReport solve(const IntMatrix& matrix, std::span<const BigInt> rhs, GroupSpec group) {
  if (rhs.size() != matrix.rows()) {
    throw std::invalid_argument("right-hand side has " + std::to_string(rhs.size()) +
                                " entries, matrix has " + std::to_string(matrix.rows()) + " rows");
  }
  const std::size_t n = matrix.cols();
  const std::uint64_t m = group.modulus;

  IntMatrix d = matrix;
  IntVector r(rhs.begin(), rhs.end());
  IntMatrix v = IntMatrix::identity(n);
  internal::VectorRowTracker tracker{r};
  internal::smith_eliminate(d, tracker, v);

  SolutionReport report;
  report.modulus = m;
  const std::size_t diag = std::min(d.rows(), n);
  for (std::size_t i = 0; i < diag; ++i) report.snf_diagonal.push_back(d(i, i));

  // diagonal entry for row/column i; zero past the diagonal
  auto entry = [&](std::size_t i) { return i < diag ? d(i, i) : BigInt(0); };

  IntVector y(n);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const BigInt di = entry(i);
    if (m == 0) {
      if (di == 0) {
        if (r[i] != 0) return report;
      } else {
        if (r[i] % di != 0) return report;
        y[i] = r[i] / di;
      }
      continue;
    }
    const BigInt mod(m);
    const BigInt g = gcd(di, mod);  // gcd(0, m) == m
    const BigInt ri = reduce_mod(r[i], m);
    if (ri % g != 0) return report;
    if (i < n) {
      const BigInt reduced_mod = mod / g;
      if (reduced_mod > 1) {
        const BigInt coeff = reduce_mod(di / g, static_cast<std::uint64_t>(reduced_mod));
        y[i] = reduce_mod((ri / g) * internal::mod_inverse(coeff, reduced_mod),
                          static_cast<std::uint64_t>(reduced_mod));
      }
    }
  }

  report.solvable = true;
  IntVector a = v * std::span<const BigInt>(y);
  for (auto& x : a) x = group.reduce(x);
  report.particular = std::move(a);

  if (m == 1) return report;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt di = entry(i);
    IntVector gen = v.column(i);
    if (m == 0) {
      if (di != 0) continue;
    } else {
      const BigInt step = BigInt(m) / gcd(di, BigInt(m));
      for (auto& x : gen) x = group.reduce(step * x);
    }
    if (std::all_of(gen.begin(), gen.end(), [](const BigInt& x) { return x == 0; })) continue;
    report.kernel_generators.push_back(std::move(gen));
  }
  return report;
}

inline SolutionReport solve_problem(const PbgProblem& p, AssemblyMode mode = AssemblyMode::kFull,
                                    std::size_t path_limit = kDefaultPathLimit) {
  const LinearSystem system = assemble_system(p, mode, path_limit);
  return solve(system.matrix, system.rhs, p.group);
}

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Brute force: every a in (Z_m)^n passing is_solution, in lexicographic order.
inline std::vector<IntVector> enumerate_solutions(const PbgProblem& p,
                                                  std::uint64_t cap = kDefaultEnumerationCap,
                                                  std::size_t path_limit = kDefaultPathLimit) {
  const std::uint64_t m = p.group.modulus;
  if (m == 0) throw std::invalid_argument("enumeration needs a finite group (m >= 1)");
  const std::size_t n = p.edge_count();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > cap / m) throw CapExceeded("m^n exceeds the enumeration cap " + std::to_string(cap));
    total *= m;
  }
  if (total > cap) throw CapExceeded("m^n exceeds the enumeration cap " + std::to_string(cap));

  const SolutionChecker check(p, path_limit);
  std::vector<IntVector> solutions;
  IntVector a(n, BigInt(0));
  for (std::uint64_t count = 0; count < total; ++count) {
    if (check(a)) solutions.push_back(a);
    for (std::size_t k = n; k-- > 0;) {
      if (++a[k] < m) break;
      a[k] = 0;
    }
  }
  return solutions;
}

}  // namespace ldk
