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

#ifndef LATDR_MULTILINEAR_H_
#define LATDR_MULTILINEAR_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "latdr/complex.h"
#include "latdr/functions.h"
#include "latdr/poset.h"

namespace latdr {

inline constexpr int64_t kDefaultIdealCap = int64_t{1} << 20;
inline constexpr int kDefaultExactDimension = 20;
inline constexpr int64_t kDefaultMonteCarloSamples = 4096;

// Normal-approximation 95% two-sided quantile.
inline constexpr double kConfidenceZ = 1.96;

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;
  int64_t samples = 0;
  uint64_t seed = 0;
};

enum class PartialKind { kZero, kForward, kBackward };

struct GradientVector {
  std::vector<double> values;
  std::vector<PartialKind> kinds;
};

enum class GradientMode { kExact, kMonteCarlo, kAuto };

struct GradientOptions {
  GradientMode mode = GradientMode::kAuto;
  // Auto mode is exact up to this many fractional coordinates.
  int exact_dimension = kDefaultExactDimension;
  int64_t samples = kDefaultMonteCarloSamples;
  uint64_t seed = 0;
};

// F(x) = E[f(X)] with X containing each p independently with probability
// x_p. Sums over the 2^k subsets of the k fractional coordinates in parallel;
// throws kCapExceeded when 2^k > cap.
double EvalExact(const Objective& f, const ComplexPoint& x,
                 int64_t cap = kDefaultIdealCap);
// Reference: the defining sum over every ideal of the poset, serially.
double EvalExactSerial(const Objective& f, const Poset& poset,
                       const ComplexPoint& x, int64_t cap = kDefaultIdealCap);

// Draw from the product distribution; an ideal whenever x is in the complex.
Ideal SampleIdeal(const Poset& poset, const ComplexPoint& x, uint64_t seed);

// Mean of f over `samples` draws; sample i uses SplitSeed(seed, MC, i).
Estimate EvalMonteCarlo(const Objective& f, const Poset& poset,
                        const ComplexPoint& x, int64_t samples, uint64_t seed);

// Whether the one-sided partial derivatives of F at x in coordinate p exist
// inside the complex.
bool ForwardDefined(const Poset& poset, const ComplexPoint& x, int p);
bool BackwardDefined(const Poset& poset, const ComplexPoint& x, int p);

// E[f(X + p) - f(X - p)] with X drawn from x; the slope of F in coordinate p
// on any cube where p is free. Exact, with the same cap rule as EvalExact.
double ExactPartial(const Objective& f, const ComplexPoint& x, int p,
                    int64_t cap = kDefaultIdealCap);

// The gradient with the forward / backward / zero case split.
GradientVector Gradient(const Objective& f, const Poset& poset,
                        const ComplexPoint& x, const GradientOptions& options);
// Reference gradient from EvalExactSerial-style enumeration.
GradientVector GradientSerial(const Objective& f, const Poset& poset,
                              const ComplexPoint& x);

struct DrGradientReport {
  bool passed = true;
  int checked = 0;  // quadruples with at least one defined pairing
  int inequalities = 0;
  // First violation.
  ComplexPoint x;
  ComplexPoint y;
  int p = -1;
  int q = -1;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Checks the one-sided gradient inequalities at x <= y, p <= q for `trials`
// random quadruples where at least one pairing is defined.
DrGradientReport CheckDrGradient(const Objective& f, const Poset& poset,
                                 int trials, uint64_t seed,
                                 double tol = 1e-7);

struct ConcavityReport {
  bool concave = true;
  bool faces_ok = true;
  double range = 0.0;
  // Largest chord excess divided by the range (or 1 if the range is 0).
  double worst_chord = 0.0;
  // Largest d+h - d-h over breakpoints.
  double worst_face = 0.0;
  int faces = 0;
  std::vector<double> times;
  std::vector<double> values;
};

// Samples h(t) = F(u(t)) along the motion from x to y on a uniform grid of
// `grid` intervals plus every breakpoint and checks that all chords lie below
// h, and that the right derivative does not exceed the left one at every
// breakpoint.
ConcavityReport CheckConcavityAlongUlm(const Objective& f, const Poset& poset,
                                       const ComplexPoint& x,
                                       const ComplexPoint& y, int grid,
                                       double tol = 1e-7);

}  // namespace latdr

#endif  // LATDR_MULTILINEAR_H_
