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

#ifndef LATDR_ORACLE_H_
#define LATDR_ORACLE_H_

#include <cstdint>

#include "latdr/complex.h"
#include "latdr/functions.h"
#include "latdr/poset.h"

namespace latdr {

struct OracleResult {
  Ideal optimum;
  double value = 0.0;
  int64_t feasible = 0;
  int64_t enumerated = 0;
};

// Exhaustive maximum of f over feasible ideals; ties go to the smaller mask.
// Throws kCapExceeded when the poset has more than `cap` ideals.
OracleResult ExactOpt(const Instance& instance, int64_t cap = int64_t{1} << 22);

struct GridOptimum {
  ComplexPoint point;
  double value = 0.0;
  int64_t points = 0;
};

// Best point of the feasible region whose coordinates are multiples of
// 1 / resolution, under the exactly evaluated multilinear extension. Throws
// kCapExceeded when more than `cap` grid points are visited.
GridOptimum ExactMultilinearOptOnGrid(const Instance& instance, int resolution,
                                      int64_t cap = int64_t{1} << 20);

}  // namespace latdr

#endif  // LATDR_ORACLE_H_
