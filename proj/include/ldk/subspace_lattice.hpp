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

// The lattice of subspaces of F_p^d for small p and d, with join (sum) and
// meet (intersection) tabulated.
//
// Vectors are encoded as integers in [0, p^d) with coordinate k as the k-th
// base-p digit. A subspace is stored as the bit set of its member vectors
// together with its reduced row echelon basis.

#pragma once

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ldk {

class SubspaceLattice {
 public:
  using Code = std::uint32_t;
  using Members = std::bitset<128>;
  using Element = std::size_t;

  struct Subspace {
    Members members;
    std::vector<std::vector<std::uint32_t>> basis;  // reduced row echelon form
  };

  SubspaceLattice(std::uint32_t prime, std::uint32_t dimension) : p_(prime), d_(dimension) {
    if (prime != 2 && prime != 3 && prime != 5) {
      throw std::invalid_argument("subspace lattices are supported for p in {2, 3, 5}");
    }
    if (dimension < 1 || dimension > 3) {
      throw std::invalid_argument("subspace lattices are supported for dimension 1..3");
    }
    size_ = 1;
    for (std::uint32_t k = 0; k < d_; ++k) size_ *= p_;
    enumerate();
    tabulate();
  }

  std::uint32_t prime() const { return p_; }
  std::uint32_t dimension() const { return d_; }
  // Number of vectors, p^d.
  std::uint32_t vector_count() const { return size_; }
  std::size_t size() const { return subspaces_.size(); }
  const Subspace& subspace(Element e) const { return subspaces_.at(e); }

  Element bottom() const { return 0; }
  Element top() const { return subspaces_.size() - 1; }

  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  bool leq(Element a, Element b) const {
    return (subspaces_[a].members & ~subspaces_[b].members).none();
  }
  bool contains(Element e, Code x) const { return subspaces_.at(e).members.test(x); }

  Code add(Code x, Code y) const {
    Code out = 0;
    Code scale = 1;
    for (std::uint32_t k = 0; k < d_; ++k) {
      out += ((x % p_ + y % p_) % p_) * scale;
      x /= p_;
      y /= p_;
      scale *= p_;
    }
    return out;
  }
  Code scale(Code x, std::uint32_t c) const {
    Code out = 0;
    Code factor = 1;
    for (std::uint32_t k = 0; k < d_; ++k) {
      out += ((x % p_) * c % p_) * factor;
      x /= p_;
      factor *= p_;
    }
    return out;
  }
  Code negate(Code x) const { return scale(x, p_ - 1); }
  Code subtract(Code x, Code y) const { return add(x, negate(y)); }

  Code encode(const std::vector<std::uint32_t>& coords) const {
    if (coords.size() != d_) throw std::invalid_argument("wrong vector length");
    Code out = 0;
    for (std::uint32_t k = d_; k-- > 0;) out = out * p_ + coords[k] % p_;
    return out;
  }
  std::vector<std::uint32_t> decode(Code x) const {
    std::vector<std::uint32_t> coords(d_);
    for (std::uint32_t k = 0; k < d_; ++k) {
      coords[k] = x % p_;
      x /= p_;
    }
    return coords;
  }

  // The subspace spanned by the given vectors.
  Element span_of(const std::vector<Code>& generators) const {
    Members m;
    m.set(0);
    for (Code g : generators) m = extend(m, g);
    return index_.at(m);
  }

 private:
  Members extend(const Members& m, Code v) const {
    Members out;
    for (Code x = 0; x < size_; ++x) {
      if (!m.test(x)) continue;
      for (std::uint32_t c = 0; c < p_; ++c) out.set(add(x, scale(v, c)));
    }
    return out;
  }

  std::vector<std::vector<std::uint32_t>> rref(const Members& m) const {
    std::vector<std::vector<std::uint32_t>> rows;
    for (Code x = 1; x < size_; ++x) {
      if (m.test(x)) rows.push_back(decode(x));
    }
    std::vector<std::vector<std::uint32_t>> basis;
    std::size_t pivot_row = 0;
    for (std::uint32_t col = 0; col < d_ && pivot_row < rows.size(); ++col) {
      auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(pivot_row), rows.end(),
                             [col](const auto& r) { return r[col] != 0; });
      if (it == rows.end()) continue;
      std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(pivot_row), it);
      auto& pr = rows[pivot_row];
      std::uint32_t inv = 1;
      while (pr[col] * inv % p_ != 1) ++inv;
      for (auto& x : pr) x = x * inv % p_;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == pivot_row || rows[r][col] == 0) continue;
        const std::uint32_t f = rows[r][col];
        for (std::uint32_t k = 0; k < d_; ++k) rows[r][k] = (rows[r][k] + (p_ - f) * pr[k]) % p_;
      }
      ++pivot_row;
    }
    basis.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(pivot_row));
    return basis;
  }

  void enumerate() {
    Members zero;
    zero.set(0);
    std::vector<Members> found{zero};
    std::unordered_map<Members, bool> seen{{zero, true}};
    for (std::size_t k = 0; k < found.size(); ++k) {
      for (Code v = 1; v < size_; ++v) {
        if (found[k].test(v)) continue;
        Members next = extend(found[k], v);
        if (seen.emplace(next, true).second) found.push_back(next);
      }
    }
    for (const auto& m : found) subspaces_.push_back(Subspace{m, rref(m)});
    std::sort(subspaces_.begin(), subspaces_.end(), [](const Subspace& a, const Subspace& b) {
      if (a.basis.size() != b.basis.size()) return a.basis.size() < b.basis.size();
      return a.basis < b.basis;
    });
    for (Element e = 0; e < subspaces_.size(); ++e) index_.emplace(subspaces_[e].members, e);
  }

  void tabulate() {
    const std::size_t n = subspaces_.size();
    join_.resize(n * n);
    meet_.resize(n * n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        meet_[a * n + b] = index_.at(subspaces_[a].members & subspaces_[b].members);
        Members sum = subspaces_[a].members;
        for (const auto& row : subspaces_[b].basis) sum = extend(sum, encode(row));
        join_[a * n + b] = index_.at(sum);
      }
    }
  }

  std::uint32_t p_;
  std::uint32_t d_;
  std::uint32_t size_ = 1;
  std::vector<Subspace> subspaces_;
  std::unordered_map<Members, Element> index_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
};

}  // namespace ldk
