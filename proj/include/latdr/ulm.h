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

#ifndef LATDR_ULM_H_
#define LATDR_ULM_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "latdr/complex.h"
#include "latdr/element_set.h"
#include "latdr/poset.h"

namespace latdr {

// Flow network of the motion from x to y. Node i stands for poset element
// elements[i]; only coordinates that move are nodes. A virtual source feeds
// `sources` and `sinks` drain into a virtual sink.
struct UlmNetwork {
  std::vector<int> elements;
  std::vector<double> weight;  // |y_p - x_p|
  std::vector<int> sign;       // +1 or -1
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> sources;
  std::vector<int> sinks;
  double demand = 0.0;  // sum of weights

  int size() const { return static_cast<int>(elements.size()); }
};

// Throws kEmptyMotion when x == y and kInvalidArgument when a point is not in
// the complex.
UlmNetwork BuildNetwork(const Poset& poset, const ComplexPoint& x,
                        const ComplexPoint& y);

enum class FlowStart { kPathCover, kRandomPaths };
enum class FlowMethod { kSeriesParallel, kPathEquilibration };

struct FlowOptions {
  // Relative spread between the longest path and the shortest path that
  // carries flow, at which the iterative solver stops.
  double tolerance = 1e-10;
  int max_iterations = 100000;
  // Use the closed form when the network is series-parallel.
  bool allow_series_parallel = true;
  FlowStart start = FlowStart::kPathCover;
  uint64_t seed = 0;
};

struct UlmSolution {
  // Per node, in time units where the motion takes [0, 1].
  std::vector<double> speed;
  std::vector<double> start;
  std::vector<double> duration;
  // Longest source-to-sink time before rescaling; 1 at the exact optimum.
  double normalization = 1.0;
  // Relative gap between longest and shortest flow-carrying path.
  double residual = 0.0;
  int iterations = 0;
  FlowMethod method = FlowMethod::kSeriesParallel;
};

// Maximizes sum_i weight_i log v_i over flows of value `demand`. Throws
// kNoConvergence with the residual if the iteration limit is hit.
UlmSolution SolveFlow(const UlmNetwork& net, const FlowOptions& options);

// Series-parallel test used by SolveFlow; exposed for tests.
bool IsSeriesParallel(const UlmNetwork& net);

// The piecewise-linear curve from x to y.
class UniformLinearMotion {
 public:
  // Event times closer than this are merged into one breakpoint.
  static constexpr double kMergeTolerance = 1e-10;

  UniformLinearMotion() = default;
  static UniformLinearMotion Compute(const Poset& poset, const ComplexPoint& x,
                                     const ComplexPoint& y,
                                     const FlowOptions& options = {});

  // u(t) for t in [0, 1], snapped to the complex tolerance.
  ComplexPoint Evaluate(double t) const;
  // Velocity of every coordinate on the open segment containing t, or just
  // before / just after the breakpoint t.
  std::vector<double> VelocityAt(double t) const;
  std::vector<double> VelocityBefore(double t) const;
  std::vector<double> VelocityAfter(double t) const;

  const ComplexPoint& from() const { return x_; }
  const ComplexPoint& to() const { return y_; }
  bool constant() const { return network_.size() == 0; }
  const UlmNetwork& network() const { return network_; }
  const UlmSolution& solution() const { return solution_; }
  // Sorted interior event times (activation starts and finishes).
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  ComplexPoint x_;
  ComplexPoint y_;
  UlmNetwork network_;
  UlmSolution solution_;
  std::vector<double> breakpoints_;
};

ComplexPoint EvaluateUlm(const Poset& poset, const ComplexPoint& x,
                         const ComplexPoint& y, double t);

struct TransportFlow {
  int from = 0;
  int to = 0;
  double amount = 0.0;
};

// Result of the flow-conservation test at one time.
struct FaceCheck {
  double t = 0.0;
  std::vector<double> before;
  std::vector<double> after;
  bool feasible = true;
  // Witness when feasible.
  std::vector<TransportFlow> flows;
  // Largest supply or demand mismatch of the witness.
  double residual = 0.0;
  // Certificate when infeasible: sinks whose demand exceeds the supply of all
  // elements able to feed them.
  ElementSet deficient;
  ElementSet feeders;
  double deficit = 0.0;
};

struct StraightnessReport {
  bool straight = true;
  std::vector<FaceCheck> faces;
};

// Routes incoming velocity `before` to outgoing velocity `after`: increasing
// coordinates may pass flow upward (p -> q with p <= q), decreasing ones
// downward. Self-transfers are allowed.
FaceCheck CheckFaceTransport(const Poset& poset,
                             const std::vector<double>& before,
                             const std::vector<double>& after, double tol);

StraightnessReport VerifyStraightness(const Poset& poset,
                                      const UniformLinearMotion& motion,
                                      double tol);

}  // namespace latdr

#endif  // LATDR_ULM_H_
