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

#ifndef LATDR_GREEDY_H_
#define LATDR_GREEDY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "latdr/complex.h"
#include "latdr/functions.h"
#include "latdr/multilinear.h"
#include "latdr/poset.h"

namespace latdr {

struct GreedyConfig {
  double epsilon = 0.05;
  GradientOptions gradient;
  double lp_tolerance = 1e-9;
  // Keep the per-iteration trace (and evaluate F at every iterate).
  bool record_trace = true;
  uint64_t seed = 0;
};

enum class GreedyBranch { kLpStep, kCubeTransition };

struct GreedyStep {
  ComplexPoint x;
  double value = 0.0;
  GreedyBranch branch = GreedyBranch::kLpStep;
  // Element completed by a cube transition, else -1.
  int witness = -1;
  // C_lambda(x) per constraint.
  std::vector<double> usage;
};

struct GreedyTrace {
  // Entry 0 is the starting point; entry k is the k-th iterate.
  std::vector<GreedyStep> steps;
  int lp_steps = 0;
  int transitions = 0;
};

struct GreedyResult {
  ComplexPoint x;
  double value = 0.0;
  GreedyTrace trace;
};

// sum_p c(p) x_p.
double ContinuousCost(const CostFunction& c, const ComplexPoint& x);

// The best point of the epsilon upper neighbourhood inside Cube(x) for the
// linear objective g, as a vertex of the step LP. Only free coordinates of
// the cube below 1 move.
ComplexPoint NeighborhoodInCube(const Poset& poset, const ComplexPoint& x,
                                const GradientVector& g,
                                const std::vector<CostFunction>& constraints,
                                double epsilon, double lp_tolerance = 1e-9);

// An antichain coordinate p < 1 of Cube(x) that can be raised to 1 within
// epsilon * b in every constraint while unlocking an upper cover q whose
// other lower covers are already at 1; none if no such p exists. When
// `gradient` is given the witness maximizing g_p (1 - x_p) is returned,
// otherwise the lowest index.
std::optional<int> NeighborhoodEscapesCube(
    const Poset& poset, const ComplexPoint& x,
    const std::vector<CostFunction>& constraints, double epsilon,
    const GradientVector* gradient = nullptr);

// floor(1/epsilon) iterations of the continuous greedy method from the
// bottom of the complex. Each iteration either completes a cube-transition
// witness or takes the LP step on the current cube.
GreedyResult RunGreedy(const Instance& instance, const GreedyConfig& config);

}  // namespace latdr

#endif  // LATDR_GREEDY_H_
