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

#ifndef LATDR_ROUNDING_H_
#define LATDR_ROUNDING_H_

#include <cstdint>
#include <string>
#include <vector>

#include "latdr/complex.h"
#include "latdr/functions.h"
#include "latdr/greedy.h"
#include "latdr/poset.h"

namespace latdr {

struct RoundingConfig {
  // Rounding-phase epsilon, in (0, 1/2).
  double epsilon = 0.1;
  // Largest |X| enumerated by Solve; the bound ceil(e |Lambda| / eps^3) is
  // used when it is smaller.
  int enumeration_cap = 2;
  int trials = 200;
  uint64_t seed = 1;
  // Settings of the continuous greedy run on each cost residual.
  GreedyConfig greedy;
  // Limit on candidate ideals enumerated below the big elements.
  int64_t ideal_cap = int64_t{1} << 16;
};

// ceil(e * constraints / epsilon^3), saturated at INT32_MAX.
int EnumerationBound(double epsilon, int constraints);

// Big elements per constraint: c(p) > eps^4 b.
struct BigSmallSplit {
  std::vector<ElementSet> big;
  // Big in at least one constraint.
  ElementSet any_big;
  // Big in none.
  ElementSet small;
};

BigSmallSplit SplitBigSmall(const Poset& poset,
                            const std::vector<CostFunction>& constraints,
                            double epsilon);

enum class ResidualKind { kValue, kCost };

struct ResidualProblem {
  ResidualKind kind = ResidualKind::kValue;
  ElementSet base;
  // Parent labels of the residual poset, and the relabeling.
  ElementSet elements;
  std::vector<int> to_parent;
  // Marginal threshold of a value residual (unused for the cost kind).
  double threshold = 0.0;
  // Induced poset, f_T and budgets b - c(T).
  Instance instance;
};

// Elements p outside T whose marginal f(T + I_p) - f(T) is at most f(T) / h.
// With h = 0 the threshold is +inf when f(T) > 0 and 0 otherwise.
ResidualProblem MakeValueResidual(const Instance& instance, const Ideal& t,
                                  int h);
// The small elements outside T.
ResidualProblem MakeCostResidual(const Instance& instance, const Ideal& t,
                                 const BigSmallSplit& split);

struct PushDownResult {
  Ideal ideal;
  // Substitute chosen for each element of d1 in topological order (-1 when
  // skipped).
  std::vector<int> chosen;
  // Elements with no admissible element below them.
  int skipped = 0;
};

// Adds, for each element of d1 in topological order, the smallest-index
// admissible element below it. Requires d1 and d2 to be disjoint.
PushDownResult PushDown(const Poset& poset, ElementSet d1, const Ideal& d2);

struct RoundingStats {
  // Candidate roundings performed and how many hit the rejection test.
  int64_t events = 0;
  int64_t rejections = 0;
  // Events where the big-element repair removed something.
  int64_t repairs = 0;
  int64_t removals = 0;
  // Largest number of removals for one constraint in one event.
  int max_removals = 0;
  // Removals that had to use another constraint's big elements.
  int64_t fallbacks = 0;
  int64_t pushdown_skips = 0;

  void Merge(const RoundingStats& other);
};

// Everything about one candidate T that does not depend on the random draw.
struct CandidatePlan {
  Ideal t;
  std::vector<ElementSet> t_prime;
  std::vector<ElementSet> t_lambda;
  ResidualProblem cost;
  // Truncated greedy point on the cost residual poset.
  ComplexPoint x_bar;
  // Truncated motion towards T on the full poset.
  ComplexPoint x_t;
  double greedy_value = 0.0;
};

struct RoundingPlan {
  BigSmallSplit split;
  std::vector<CandidatePlan> candidates;
  std::vector<std::string> diagnostics;
};

// Steps that precede sampling: candidate enumeration, residual greedy runs
// and truncated motions. Candidates whose greedy or motion fails are
// skipped with a diagnostic.
RoundingPlan PlanRounding(const Instance& instance,
                          const RoundingConfig& config);

struct RoundOutcome {
  Ideal ideal;
  double value = 0.0;
  int candidate = -1;
  RoundingStats stats;
};

// One randomized pass over every candidate of the plan; returns the best
// candidate output, lowest index on ties.
RoundOutcome SampleRounding(const Instance& instance, const RoundingPlan& plan,
                            const RoundingConfig& config, uint64_t seed);

RoundOutcome RoundOnce(const Instance& instance, const RoundingConfig& config,
                       uint64_t seed);

struct SolveReport {
  int enumeration_bound = 0;
  int enumeration_limit = 0;
  bool enumeration_truncated = false;
  int work_items = 0;
  int64_t candidates = 0;
  int trials = 0;
  double mean = 0.0;
  double half_width = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double feasibility_rate = 0.0;
  int best_trial = -1;
  // Per-trial output values.
  std::vector<double> values;
  std::vector<bool> trial_feasible;
  RoundingStats stats;
  int removal_bound = 0;
  std::vector<std::string> diagnostics;
};

struct SolveResult {
  Ideal solution;
  double value = 0.0;
  std::vector<double> usage;
  SolveReport report;
};

// Partial enumeration over generating sets X followed by rounding on each
// value residual, repeated for config.trials seeds. The returned solution is
// the best trial output.
SolveResult Solve(const Instance& instance, const RoundingConfig& config);

}  // namespace latdr

#endif  // LATDR_ROUNDING_H_
