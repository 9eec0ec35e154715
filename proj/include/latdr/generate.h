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

#ifndef LATDR_GENERATE_H_
#define LATDR_GENERATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "latdr/complex.h"
#include "latdr/functions.h"
#include "latdr/poset.h"
#include "latdr/rng.h"

namespace latdr {

// Random poset: each pair is related with probability `density` in a random
// linear order, then reduced to covers.
Poset RandomPoset(int n, double density, Rng& rng);
// Adds each admissible element with probability 1/2 along a linear extension.
Ideal RandomIdeal(const Poset& poset, Rng& rng);
// A random member of the complex, mixing integral and fractional coordinates.
ComplexPoint RandomPoint(const Poset& poset, Rng& rng);
// A point in the interior of a maximal cube: every antichain coordinate of
// its cube is strictly between 0 and 1.
ComplexPoint RandomInteriorPoint(const Poset& poset, Rng& rng);

enum class PosetFamily { kChain, kAntichain, kForest, kLayered, kRandom };
enum class ObjectiveKind { kModular, kCoverage, kConcave };

Poset FamilyPoset(PosetFamily family, int n, Rng& rng);

struct GeneratorParams {
  PosetFamily family = PosetFamily::kLayered;
  ObjectiveKind objective = ObjectiveKind::kCoverage;
  ConcaveShape shape = ConcaveShape::kSqrt;
  int n = 6;
  int constraints = 1;
  // Budget of each constraint as a fraction of its total cost.
  double budget_fraction = 0.4;
  bool unit_costs = false;
  uint64_t seed = 1;
  int max_attempts = 50;
};

// Draws instances until one passes every validator and returns it with DR
// status kValidated. Throws kInvalidArgument on bad parameters or when no
// attempt validates.
Instance GenerateInstance(const GeneratorParams& params);

// The fixed 20-instance suite (n in [4, 8], one or two constraints, all three
// objective kinds) used for solver quality checks.
std::vector<Instance> StandardSuite(int count, uint64_t seed);

// Parses "chain", "antichain", "forest", "layered", "random"; throws
// kInvalidArgument.
PosetFamily ParsePosetFamily(const std::string& name);

}  // namespace latdr

#endif  // LATDR_GENERATE_H_
