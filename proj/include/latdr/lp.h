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

#ifndef LATDR_LP_H_
#define LATDR_LP_H_

#include <vector>

namespace latdr {

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
  // One multiplier per row.
  std::vector<double> duals;
  int pivots = 0;
  // Largest violation found by the optimality self-check.
  double check_error = 0.0;
};

// Maximizes c.x subject to A x <= b and 0 <= x <= upper with b >= 0, so x = 0
// is feasible. Bounded primal simplex with Bland's rule on a dense tableau;
// the returned point is a vertex. Verifies primal feasibility, dual
// feasibility and complementary slackness before returning and throws
// kNoConvergence if that check or the pivot limit fails.
LpResult SolveBoundedLp(const std::vector<double>& c,
                        const std::vector<std::vector<double>>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& upper,
                        double tolerance = 1e-9);

}  // namespace latdr

#endif  // LATDR_LP_H_
