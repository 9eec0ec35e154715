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

#include "latdr/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "latdr/error.h"
#include "latdr/multilinear.h"
#include "latdr/parallel.h"
#include "latdr/rng.h"
#include "latdr/ulm.h"

namespace latdr {
namespace {

constexpr double kCostTolerance = 1e-9;

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument,
                "rounding epsilon must lie in (0, 1/2)");
  }
}

Instance SubInstance(const Instance& instance, ElementSet base,
                     ElementSet elements, std::vector<int>* to_parent) {
  Poset sub = instance.poset().Induced(elements, to_parent);
  Objective f = instance.objective().Residual(base, *to_parent);
  std::vector<CostFunction> costs;
  for (const CostFunction& c : instance.constraints()) {
    costs.push_back(
        c.Restricted(*to_parent, std::max(0.0, c.budget() - c.Cost(base))));
  }
  Instance out =
      Instance::Create(std::move(sub), std::move(f), std::move(costs));
  out.set_dr_status(instance.dr_status());
  return out;
}

// u(1 - eps) on the motion from the bottom to `target`.
ComplexPoint Truncate(const Poset& poset, const ComplexPoint& target,
                      double epsilon) {
  return EvaluateUlm(poset, ComplexPoint::Bottom(poset.size()), target,
                     1.0 - epsilon);
}

std::vector<ElementSet> TLambda(const Poset& poset,
                                const std::vector<ElementSet>& t_prime) {
  std::vector<ElementSet> out;
  for (ElementSet s : t_prime) out.push_back(poset.DownClosureOf(s));
  return out;
}

// Steps 4-7 for one candidate and one draw.
Ideal RoundCandidate(const Instance& instance, const CandidatePlan& plan,
                     double epsilon, uint64_t seed, RoundingStats& stats) {
  const Poset& poset = instance.poset();
  const auto& constraints = instance.constraints();
  const int m = static_cast<int>(constraints.size());
  ElementSet d1;
  if (plan.cost.instance.size() > 0) {
    const Ideal local =
        SampleIdeal(plan.cost.instance.poset(), plan.x_bar,
                    SplitSeed(seed, kStreamSampleIdeal, 0));
    d1 = Poset::LiftSet(local.members(), plan.cost.to_parent);
  }
  const ElementSet sampled_d2 =
      SampleIdeal(poset, plan.x_t, SplitSeed(seed, kStreamSampleIdeal, 1))
          .members();
  ElementSet d2 = sampled_d2;
  ++stats.events;

  std::vector<double> b_bar(m);
  std::vector<bool> tight(m);
  for (int l = 0; l < m; ++l) {
    const CostFunction& c = constraints[l];
    b_bar[l] = c.budget() - c.Cost(plan.t_lambda[l]);
    tight[l] = b_bar[l] <= epsilon * c.budget();
  }
  const ElementSet d = d1 | d2;
  for (int l = 0; l < m; ++l) {
    const CostFunction& c = constraints[l];
    const double b = c.budget();
    const bool reject =
        tight[l] ? c.Cost(d - plan.t_lambda[l]) > epsilon * b + b_bar[l]
                 : c.Cost(d) > b;
    if (reject) {
      ++stats.rejections;
      return Ideal();
    }
  }

  std::vector<ElementSet> t_prime = plan.t_prime;
  std::vector<ElementSet> t_lambda = plan.t_lambda;
  bool repaired = false;
  auto over = [&](int l) {
    return constraints[l].Cost(d1 | d2) >
           constraints[l].budget() + kCostTolerance;
  };
  auto reunite = [&] {
    ElementSet all;
    for (ElementSet s : t_lambda) all |= s;
    d2 = sampled_d2 & all;
  };
  for (int l = 0; l < m; ++l) {
    if (!tight[l]) continue;
    int removed = 0;
    while (over(l)) {
      // Costliest remaining big element of this constraint, then of any
      // other constraint whose removal still lowers this cost.
      int owner = -1;
      int pick = -1;
      for (int pass = 0; pass < 2 && pick < 0; ++pass) {
        for (int mu = 0; mu < m; ++mu) {
          if ((pass == 0) != (mu == l)) continue;
          for (int p : t_prime[mu]) {
            if (pick < 0 || constraints[l].weight(p) >
                                constraints[l].weight(pick)) {
              pick = p;
              owner = mu;
            }
          }
        }
      }
      if (pick < 0) {
        // No big element left anywhere; D2 is empty from here on.
        d2 = ElementSet();
        ++stats.fallbacks;
        break;
      }
      if (owner != l) ++stats.fallbacks;
      t_prime[owner].Erase(pick);
      t_lambda[owner] = poset.DownClosureOf(t_prime[owner]);
      reunite();
      ++removed;
      ++stats.removals;
      repaired = true;
    }
    stats.max_removals = std::max(stats.max_removals, removed);
  }
  if (repaired) ++stats.repairs;

  const PushDownResult pushed =
      PushDown(poset, d1 - d2, poset.MakeIdeal(d2));
  stats.pushdown_skips += pushed.skipped;
  return pushed.ideal;
}

}  // namespace

int EnumerationBound(double epsilon, int constraints) {
  const double v =
      std::ceil(std::numbers::e * constraints / (epsilon * epsilon * epsilon));
  if (!(v < static_cast<double>(std::numeric_limits<int>::max()))) {
    return std::numeric_limits<int>::max();
  }
  return static_cast<int>(v);
}

BigSmallSplit SplitBigSmall(const Poset& poset,
                            const std::vector<CostFunction>& constraints,
                            double epsilon) {
  BigSmallSplit split;
  const double e4 = epsilon * epsilon * epsilon * epsilon;
  for (const CostFunction& c : constraints) {
    ElementSet big;
    for (int p = 0; p < poset.size(); ++p) {
      if (c.weight(p) > e4 * c.budget()) big.Insert(p);
    }
    split.big.push_back(big);
    split.any_big |= big;
  }
  split.small = poset.All() - split.any_big;
  return split;
}

ResidualProblem MakeValueResidual(const Instance& instance, const Ideal& t,
                                  int h) {
  const Poset& poset = instance.poset();
  const Objective& f = instance.objective();
  const double ft = f(t);
  double threshold;
  if (h <= 0) {
    threshold = ft > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    threshold = ft / h;
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(ft));
  ElementSet low;
  for (int p = 0; p < poset.size(); ++p) {
    if (t.Contains(p)) continue;
    if (f(t.members() | poset.Down(p)) - ft <= threshold + slack) low.Insert(p);
  }
  // Keep the largest downward-closed part (all of it for monotone f).
  ElementSet elements;
  for (int p : low) {
    if ((poset.Down(p) - t.members()).IsSubsetOf(low)) elements.Insert(p);
  }
  ResidualProblem r;
  r.kind = ResidualKind::kValue;
  r.base = t.members();
  r.elements = elements;
  r.threshold = threshold;
  r.instance = SubInstance(instance, r.base, elements, &r.to_parent);
  return r;
}

ResidualProblem MakeCostResidual(const Instance& instance, const Ideal& t,
                                 const BigSmallSplit& split) {
  ResidualProblem r;
  r.kind = ResidualKind::kCost;
  r.base = t.members();
  r.elements = split.small - t.members();
  r.instance = SubInstance(instance, r.base, r.elements, &r.to_parent);
  return r;
}

PushDownResult PushDown(const Poset& poset, ElementSet d1, const Ideal& d2) {
  if (d1.Intersects(d2.members())) {
    throw Error(ErrorCode::kInvalidArgument,
                "push down needs disjoint inputs");
  }
  PushDownResult result;
  ElementSet d = d2.members();
  for (int p : poset.TopologicalOrder()) {
    if (!d1.Contains(p)) continue;
    int chosen = -1;
    for (int q : poset.Down(p) - d) {
      if (poset.LowerCovers(q).IsSubsetOf(d)) {
        chosen = q;
        break;
      }
    }
    result.chosen.push_back(chosen);
    if (chosen < 0) {
      ++result.skipped;
      continue;
    }
    d.Insert(chosen);
  }
  result.ideal = poset.MakeIdeal(d);
  return result;
}

void RoundingStats::Merge(const RoundingStats& other) {
  events += other.events;
  rejections += other.rejections;
  repairs += other.repairs;
  removals += other.removals;
  max_removals = std::max(max_removals, other.max_removals);
  fallbacks += other.fallbacks;
  pushdown_skips += other.pushdown_skips;
}

RoundingPlan PlanRounding(const Instance& instance,
                          const RoundingConfig& config) {
  CheckEpsilon(config.epsilon);
  const Poset& poset = instance.poset();
  const auto& constraints = instance.constraints();
  RoundingPlan plan;
  plan.split = SplitBigSmall(poset, constraints, config.epsilon);
  // Candidates live below the big elements; enumerate only that part.
  std::vector<int> to_parent;
  const Poset below =
      poset.Induced(poset.DownClosureOf(plan.split.any_big), &to_parent);
  int index = 0;
  for (const Ideal& local : below.EnumerateIdeals(config.ideal_cap)) {
    const Ideal t = poset.MakeIdeal(
        Poset::LiftSet(local.members(), to_parent));
    if (!poset.MaximalElements(t.members()).IsSubsetOf(plan.split.any_big)) {
      continue;
    }
    if (!instance.Feasible(t.members())) continue;
    const int id = index++;
    CandidatePlan cand;
    cand.t = t;
    for (ElementSet big : plan.split.big) {
      cand.t_prime.push_back(big & t.members());
    }
    cand.t_lambda = TLambda(poset, cand.t_prime);
    try {
      cand.cost = MakeCostResidual(instance, t, plan.split);
      const Instance& sub = cand.cost.instance;
      if (sub.size() > 0) {
        GreedyConfig greedy = config.greedy;
        greedy.record_trace = false;
        greedy.seed = SplitSeed(config.seed, kStreamGreedy, id);
        const GreedyResult g = RunGreedy(sub, greedy);
        cand.greedy_value = g.value;
        cand.x_bar = Truncate(sub.poset(), g.x, config.epsilon);
      } else {
        cand.x_bar = ComplexPoint::Bottom(0);
      }
      cand.x_t = Truncate(poset, IntegerPoint(poset, t), config.epsilon);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoConvergence) throw;
      plan.diagnostics.push_back("candidate " + std::to_string(id) +
                                 " skipped: " + e.what());
      continue;
    }
    plan.candidates.push_back(std::move(cand));
  }
  return plan;
}

RoundOutcome SampleRounding(const Instance& instance, const RoundingPlan& plan,
                            const RoundingConfig& config, uint64_t seed) {
  RoundOutcome out;
  out.value = instance.objective()(Ideal());
  for (int j = 0; j < static_cast<int>(plan.candidates.size()); ++j) {
    const Ideal d =
        RoundCandidate(instance, plan.candidates[j], config.epsilon,
                       SplitSeed(seed, kStreamRounding, j), out.stats);
    const double v = instance.objective()(d);
    if (out.candidate < 0 || v > out.value) {
      out.ideal = d;
      out.value = v;
      out.candidate = j;
    }
  }
  return out;
}

RoundOutcome RoundOnce(const Instance& instance, const RoundingConfig& config,
                       uint64_t seed) {
  const RoundingPlan plan = PlanRounding(instance, config);
  return SampleRounding(instance, plan, config, seed);
}

SolveResult Solve(const Instance& instance, const RoundingConfig& config) {
  CheckEpsilon(config.epsilon);
  if (config.trials < 1 || config.enumeration_cap < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "trials must be positive and the enumeration cap nonnegative");
  }
  const Poset& poset = instance.poset();
  const Objective& f = instance.objective();
  const int n = poset.size();
  const int m = static_cast<int>(instance.constraints().size());
  SolveResult result;
  SolveReport& report = result.report;
  report.enumeration_bound = EnumerationBound(config.epsilon, std::max(1, m));
  report.enumeration_limit =
      std::min({report.enumeration_bound, config.enumeration_cap, n});
  report.enumeration_truncated =
      config.enumeration_cap < report.enumeration_bound &&
      config.enumeration_cap < n;
  report.removal_bound = static_cast<int>(
      std::ceil(1.0 / (config.epsilon * config.epsilon * config.epsilon)));
  report.trials = config.trials;

  // Work items: distinct (T, |X|) over generating sets X.
  std::map<std::pair<uint64_t, int>, int> seen;
  std::vector<std::pair<Ideal, int>> items;
  std::vector<int> stack;
  auto visit = [&](auto&& self, int next) -> void {
    ElementSet x = ElementSet::FromVector(stack);
    const Ideal t = poset.DownClosure(x);
    const int h = static_cast<int>(stack.size());
    if (instance.Feasible(t.members()) &&
        seen.emplace(std::make_pair(t.members().mask(), h), 0).second) {
      items.emplace_back(t, h);
    }
    if (h == report.enumeration_limit) return;
    for (int p = next; p < n; ++p) {
      stack.push_back(p);
      self(self, p + 1);
      stack.pop_back();
    }
  };
  visit(visit, 0);
  report.work_items = static_cast<int>(items.size());

  struct Prepared {
    ResidualProblem residual;
    RoundingPlan plan;
  };
  std::vector<Prepared> prepared(items.size());
  ParallelFor(static_cast<int64_t>(items.size()), [&](int64_t i) {
    RoundingConfig item = config;
    item.seed = SplitSeed(config.seed, kStreamRounding, i);
    prepared[i].residual =
        MakeValueResidual(instance, items[i].first, items[i].second);
    prepared[i].plan = PlanRounding(prepared[i].residual.instance, item);
  });
  for (size_t i = 0; i < prepared.size(); ++i) {
    report.candidates +=
        static_cast<int64_t>(prepared[i].plan.candidates.size());
    for (const std::string& d : prepared[i].plan.diagnostics) {
      report.diagnostics.push_back("item " + std::to_string(i) + ": " + d);
    }
  }

  struct TrialOutput {
    ElementSet solution;
    double value = 0.0;
    RoundingStats stats;
  };
  std::vector<TrialOutput> trials(config.trials);
  ParallelFor(config.trials, [&](int64_t r) {
    const uint64_t trial_seed = SplitSeed(config.seed, kStreamTrials, r);
    TrialOutput& out = trials[r];
    bool any = false;
    for (size_t i = 0; i < prepared.size(); ++i) {
      const Prepared& prep = prepared[i];
      const RoundOutcome o =
          SampleRounding(prep.residual.instance, prep.plan, config,
                         SplitSeed(trial_seed, kStreamRounding, i));
      out.stats.Merge(o.stats);
      const ElementSet s =
          items[i].first.members() |
          Poset::LiftSet(o.ideal.members(), prep.residual.to_parent);
      const double v = f(s);
      if (!any || v > out.value) {
        out.solution = s;
        out.value = v;
        any = true;
      }
    }
    if (!any) out.value = f(ElementSet());
  });

  int feasible = 0;
  double sum = 0.0;
  for (int r = 0; r < config.trials; ++r) {
    const TrialOutput& t = trials[r];
    report.values.push_back(t.value);
    report.stats.Merge(t.stats);
    sum += t.value;
    const bool ok = poset.IsIdeal(t.solution) && instance.Feasible(t.solution);
    report.trial_feasible.push_back(ok);
    if (ok) ++feasible;
    if (report.best_trial < 0 || t.value > trials[report.best_trial].value) {
      report.best_trial = r;
    }
  }
  const int count = config.trials;
  report.mean = sum / count;
  double var = 0.0;
  for (double v : report.values) var += (v - report.mean) * (v - report.mean);
  var = count > 1 ? var / (count - 1) : 0.0;
  report.half_width = kConfidenceZ * std::sqrt(var / count);
  report.min_value = *std::min_element(report.values.begin(),
                                       report.values.end());
  report.max_value = *std::max_element(report.values.begin(),
                                       report.values.end());
  report.feasibility_rate = static_cast<double>(feasible) / count;

  const TrialOutput& best = trials[report.best_trial];
  result.solution = poset.MakeIdeal(best.solution);
  result.value = best.value;
  for (const CostFunction& c : instance.constraints()) {
    result.usage.push_back(c.Cost(best.solution));
  }
  return result;
}

}  // namespace latdr
