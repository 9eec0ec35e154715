// Copyright 2026 The Authors.
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

#ifndef LATDR_TESTS_TEST_UTIL_H_
#define LATDR_TESTS_TEST_UTIL_H_

#include <vector>

#include "latdr/poset.h"

namespace latdr::testing {

// p1..p4 with p2 covered by p3 and by p4, as indices 0..3.
inline Poset ExamplePoset() { return Poset::Build(4, {{1, 2}, {1, 3}}); }

inline Poset Chain(int n) {
  std::vector<Poset::Cover> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return Poset::Build(n, covers);
}

inline Poset Antichain(int n) { return Poset::Build(n, {}); }

// Brute-force ideal test straight from the definition.
inline bool IsIdealBrute(const Poset& poset, uint64_t mask) {
  for (int p = 0; p < poset.size(); ++p) {
    if (!(mask >> p & 1)) continue;
    for (int q = 0; q < poset.size(); ++q) {
      if (poset.Leq(q, p) && !(mask >> q & 1)) return false;
    }
  }
  return true;
}

}  // namespace latdr::testing

#endif  // LATDR_TESTS_TEST_UTIL_H_
