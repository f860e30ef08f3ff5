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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldk {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

// Representative in [0, m) for m >= 1; x itself for m == 0.
inline BigInt reduce_mod(const BigInt& x, std::uint64_t m) {
  if (m == 0) return x;
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace ldk
