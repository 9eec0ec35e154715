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

#include "latdr/greedy.h"

#include <cmath>
#include <string>

#include "latdr/error.h"
#include "latdr/lp.h"
#include "latdr/rng.h"

namespace latdr {
namespace {

// Free coordinates of Cube(x) that can still grow.
std::vector<int> Movable(const Poset& poset, const ComplexPoint& x) {
  std::vector<int> out;
  for (int p : CubeOf(poset, x).antichain) {
    if (x[p] < 1.0) out.push_back(p);
  }
  return out;
}

double EvalForTrace(const Objective& f, const Poset& poset,
                    const ComplexPoint& x, const GradientOptions& options,
                    uint64_t seed) {
  const int k = Fractional(x).size();
  if (options.mode == GradientMode::kExact ||
      (options.mode == GradientMode::kAuto && k <= options.exact_dimension)) {
    return EvalExact(f, x);
  }
  return EvalMonteCarlo(f, poset, x, options.samples, seed).value;
}

}  // namespace

double ContinuousCost(const CostFunction& c, const ComplexPoint& x) {
  double total = 0.0;
  for (int p = 0; p < x.size(); ++p) total += c.weight(p) * x[p];
  return total;
}

ComplexPoint NeighborhoodInCube(const Poset& poset, const ComplexPoint& x,
                                const GradientVector& g,
                                const std::vector<CostFunction>& constraints,
                                double epsilon, double lp_tolerance) {
  const std::vector<int> vars = Movable(poset, x);
  std::vector<double> coords = x.coords();
  if (vars.empty()) return x;
  const int k = static_cast<int>(vars.size());
  std::vector<double> obj(k), upper(k);
  for (int j = 0; j < k; ++j) {
    obj[j] = g.values[vars[j]];
    upper[j] = 1.0 - x[vars[j]];
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const CostFunction& c : constraints) {
    std::vector<double> row(k);
    for (int j = 0; j < k; ++j) row[j] = c.weight(vars[j]);
    rows.push_back(std::move(row));
    rhs.push_back(epsilon * c.budget());
  }
  const LpResult lp = SolveBoundedLp(obj, rows, rhs, upper, lp_tolerance);
  for (int j = 0; j < k; ++j) {
    double v = x[vars[j]] + lp.x[j];
    if (v > 1.0 - kSnapTolerance) v = 1.0;
    coords[vars[j]] = v;
  }
  return MakePoint(poset, std::move(coords));
}

std::optional<int> NeighborhoodEscapesCube(
    const Poset& poset, const ComplexPoint& x,
    const std::vector<CostFunction>& constraints, double epsilon,
    const GradientVector* gradient) {
  std::optional<int> best;
  double best_score = 0.0;
  for (int p : Movable(poset, x)) {
    const double need = 1.0 - x[p];
    bool ok = false;
    for (int q : poset.UpperCovers(p)) {
      bool unlocked = true;
      for (int r : poset.LowerCovers(q)) {
        if (r != p && x[r] < 1.0) {
          unlocked = false;
          break;
        }
      }
      if (!unlocked) continue;
      bool fits = true;
      for (const CostFunction& c : constraints) {
        const double used = c.weight(p) * need;
        const double room = epsilon * c.budget();
        // Entering q needs a strictly positive extra step when it costs.
        if (c.weight(q) > 0.0 ? !(used < room) : !(used <= room)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    const double score = gradient ? gradient->values[p] * need : 0.0;
    if (!best || score > best_score) {
      best = p;
      best_score = score;
    }
  }
  return best;
}

GreedyResult RunGreedy(const Instance& instance, const GreedyConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "greedy epsilon must lie in (0, 1)");
  }
  const Poset& poset = instance.poset();
  const Objective& f = instance.objective();
  const auto& constraints = instance.constraints();
  const int iterations = static_cast<int>(std::floor(1.0 / config.epsilon));
  GreedyResult result;
  ComplexPoint x = ComplexPoint::Bottom(poset.size());

  auto record = [&](GreedyBranch branch, int witness, int k) {
    if (!config.record_trace) return;
    GreedyStep step;
    step.x = x;
    step.value = EvalForTrace(f, poset, x, config.gradient,
                              SplitSeed(config.seed, kStreamMonteCarlo, k));
    step.branch = branch;
    step.witness = witness;
    for (const CostFunction& c : constraints) {
      step.usage.push_back(ContinuousCost(c, x));
    }
    result.trace.steps.push_back(std::move(step));
  };
  record(GreedyBranch::kLpStep, -1, 0);

  for (int k = 0; k < iterations; ++k) {
    GradientOptions options = config.gradient;
    options.seed = SplitSeed(config.seed, kStreamGradient, k);
    const GradientVector g = Gradient(f, poset, x, options);
    const std::optional<int> witness =
        NeighborhoodEscapesCube(poset, x, constraints, config.epsilon, &g);
    if (witness) {
      std::vector<double> coords = x.coords();
      coords[*witness] = 1.0;
      x = MakePoint(poset, std::move(coords));
      ++result.trace.transitions;
      record(GreedyBranch::kCubeTransition, *witness, k + 1);
    } else {
      x = NeighborhoodInCube(poset, x, g, constraints, config.epsilon,
                             config.lp_tolerance);
      ++result.trace.lp_steps;
      record(GreedyBranch::kLpStep, -1, k + 1);
    }
  }
  result.x = x;
  result.value = config.record_trace
                     ? result.trace.steps.back().value
                     : EvalForTrace(f, poset, x, config.gradient,
                                    SplitSeed(config.seed, kStreamMonteCarlo,
                                              iterations));
  return result;
}

}  // namespace latdr
