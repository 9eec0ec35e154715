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

#include "latdr/oracle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latdr/error.h"
#include "latdr/generate.h"
#include "latdr/multilinear.h"
#include "test_util.h"

namespace latdr {
namespace {

using testing::Chain;
using testing::ExamplePoset;

Instance ExampleInstance() {
  return Instance::Create(
      ExamplePoset(),
      Objective::Coverage({2, 5, 1, 1.5, 2}, {{0}, {1, 2}, {2, 3}, {3, 4}}),
      {CostFunction("c0", {1, 1, 2, 2}, 4)});
}

Instance Generated(int i, int n = 7) {
  GeneratorParams params;
  params.family = static_cast<PosetFamily>(i % 5);
  params.objective = static_cast<ObjectiveKind>(i % 3);
  params.n = n;
  params.constraints = 1 + i % 2;
  params.seed = 1500 + i;
  return GenerateInstance(params);
}

TEST(ExactOpt, ZeroBudget) {
  const Instance inst = Instance::Create(
      ExamplePoset(), ExampleInstance().objective(),
      {CostFunction("c0", {1, 1, 2, 2}, 0)});
  const OracleResult r = ExactOpt(inst);
  EXPECT_TRUE(r.optimum.empty());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.feasible, 1);
  EXPECT_EQ(r.enumerated, 10);
}

TEST(ExactOpt, ExampleFixture) {
  const OracleResult r = ExactOpt(ExampleInstance());
  EXPECT_EQ(r.optimum.members(), ElementSet::Of({0, 1, 3}));
  EXPECT_DOUBLE_EQ(r.value, 11.5);
}

TEST(ExactOpt, ModularChainIsBestPrefix) {
  Rng rng(SplitSeed(30, kStreamTests, 0));
  for (int k = 0; k < 30; ++k) {
    const int n = rng.UniformInt(1, 8);
    std::vector<double> w(n), c(n);
    for (int i = 0; i < n; ++i) {
      w[i] = rng.Uniform() * 3;
      c[i] = (i == 0 ? 0.0 : c[i - 1]) + rng.Uniform();
    }
    const double budget = std::accumulate(c.begin(), c.end(), 0.0) *
                          rng.Uniform();
    const Instance inst = Instance::Create(Chain(n), Objective::Modular(w),
                                           {CostFunction("c", c, budget)});
    double best = 0.0, value = 0.0, cost = 0.0;
    for (int i = 0; i < n; ++i) {
      value += w[i];
      cost += c[i];
      if (cost <= budget + 1e-9) best = std::max(best, value);
    }
    EXPECT_NEAR(ExactOpt(inst).value, best, 1e-12);
  }
}

TEST(ExactOpt, MatchesMaskEnumeration) {
  for (int i = 0; i < 20; ++i) {
    const Instance inst = Generated(i);
    double best = inst.objective()(ElementSet());
    for (uint64_t mask = 0; mask < (uint64_t{1} << inst.size()); ++mask) {
      if (!testing::IsIdealBrute(inst.poset(), mask)) continue;
      const ElementSet s = ElementSet::FromMask(mask);
      bool ok = true;
      for (const CostFunction& c : inst.constraints()) {
        double total = 0.0;
        for (int p : s) total += c.weight(p);
        ok = ok && total <= c.budget() + 1e-9;
      }
      if (ok) best = std::max(best, inst.objective()(s));
    }
    const OracleResult r = ExactOpt(inst);
    EXPECT_EQ(r.value, best);
    EXPECT_TRUE(inst.Feasible(r.optimum.members()));
    EXPECT_EQ(inst.objective()(r.optimum), r.value);
    EXPECT_NEAR(EvalExact(inst.objective(),
                          IntegerPoint(inst.poset(), r.optimum)),
                r.value, 1e-12);
  }
}

TEST(ExactOpt, InvariantUnderRelabeling) {
  for (int i = 0; i < 20; ++i) {
    const Instance inst = Generated(i);
    std::vector<int> perm(inst.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(SplitSeed(31, kStreamTests, i));
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<CostFunction> cs;
    for (const CostFunction& c : inst.constraints()) {
      cs.push_back(c.Relabeled(perm));
    }
    const Instance moved =
        Instance::Create(inst.poset().Relabeled(perm),
                         inst.objective().Relabeled(perm), cs);
    const OracleResult a = ExactOpt(inst);
    const OracleResult b = ExactOpt(moved);
    // Relabeling reorders floating-point sums.
    EXPECT_NEAR(a.value, b.value, 1e-12 * std::max(1.0, std::abs(a.value)));
    EXPECT_EQ(a.feasible, b.feasible);
    EXPECT_EQ(a.enumerated, b.enumerated);
  }
}

TEST(ExactOpt, CapExceeded) {
  const Instance inst = Instance::Create(
      testing::Antichain(12),
      Objective::Modular(std::vector<double>(12, 1.0)),
      {CostFunction("c", std::vector<double>(12, 1.0), 3)});
  try {
    ExactOpt(inst, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(GridOptimum, ResolutionOneIsDiscrete) {
  for (int i = 0; i < 10; ++i) {
    const Instance inst = Generated(i, 6);
    const GridOptimum g = ExactMultilinearOptOnGrid(inst, 1);
    EXPECT_NEAR(g.value, ExactOpt(inst).value, 1e-12);
    EXPECT_EQ(g.points, ExactOpt(inst).enumerated);
  }
}

TEST(GridOptimum, RefinementNeverLowersValue) {
  for (int i = 0; i < 6; ++i) {
    const Instance inst = Generated(i, 4);
    const double v1 = ExactMultilinearOptOnGrid(inst, 1).value;
    const GridOptimum g2 = ExactMultilinearOptOnGrid(inst, 2);
    const GridOptimum g4 = ExactMultilinearOptOnGrid(inst, 4);
    EXPECT_LE(v1, g2.value + 1e-12);
    EXPECT_LE(g2.value, g4.value + 1e-12);
    EXPECT_TRUE(IsMember(inst.poset(), g4.point.coords()));
    for (const CostFunction& c : inst.constraints()) {
      double cost = 0.0;
      for (int p = 0; p < inst.size(); ++p) cost += c.weight(p) * g4.point[p];
      EXPECT_LE(cost, c.budget() + 1e-9);
    }
    EXPECT_NEAR(EvalExact(inst.objective(), g4.point), g4.value, 1e-10);
  }
}

TEST(GridOptimum, ModularAntichainNearFractionalKnapsack) {
  const std::vector<double> w = {4, 3, 2};
  const Instance inst =
      Instance::Create(testing::Antichain(3), Objective::Modular(w),
                       {CostFunction("c", {1, 1, 1}, 1.3)});
  // Fractional knapsack: all of the first, 0.3 of the second.
  const double lp = 4 + 0.3 * 3;
  for (int res : {2, 4, 8}) {
    const double g = ExactMultilinearOptOnGrid(inst, res).value;
    EXPECT_LE(g, lp + 1e-12);
    EXPECT_GE(g, lp - (4 + 3 + 2) / static_cast<double>(res));
  }
}

TEST(GridOptimum, CapExceeded) {
  const Instance inst = Instance::Create(
      testing::Antichain(6), Objective::Modular(std::vector<double>(6, 1.0)),
      {CostFunction("c", std::vector<double>(6, 1.0), 3)});
  EXPECT_THROW(ExactMultilinearOptOnGrid(inst, 8, 1000), Error);
}

}  // namespace
}  // namespace latdr
