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

#include "latdr/multilinear.h"

#include <gtest/gtest.h>

#include <cmath>

#include "latdr/error.h"
#include "latdr/generate.h"
#include "latdr/rng.h"
#include "test_util.h"

namespace latdr {
namespace {

using testing::ExamplePoset;

ComplexPoint P(std::vector<double> x) { return ComplexPoint(std::move(x)); }

Objective ExampleCoverage() {
  return Objective::Coverage({2, 5, 1, 1.5, 2}, {{0}, {1, 2}, {2, 3}, {3, 4}});
}

Objective SquaredSize(int n) {
  return Objective::Custom(
      n, [](ElementSet s) { return static_cast<double>(s.size() * s.size()); },
      "squared size");
}

Instance Generated(int index, int n = 6) {
  GeneratorParams params;
  params.family = static_cast<PosetFamily>(index % 5);
  params.objective = static_cast<ObjectiveKind>(index % 3);
  params.n = n;
  params.seed = 900 + index;
  return GenerateInstance(params);
}

TEST(EvalExact, IntegerPointGivesValue) {
  const Poset p = ExamplePoset();
  const Objective f = ExampleCoverage();
  for (const Ideal& t : p.EnumerateIdeals(100)) {
    EXPECT_DOUBLE_EQ(EvalExact(f, IntegerPoint(p, t)), f(t));
  }
}

TEST(EvalExact, ModularIsLinear) {
  const std::vector<double> w = {3, 5, 2, 1};
  const ComplexPoint x = P({0.3, 1, 0.25, 0.6});
  EXPECT_NEAR(EvalExact(Objective::Modular(w), x),
              3 * 0.3 + 5 + 2 * 0.25 + 0.6, 1e-12);
}

TEST(EvalExact, ExampleTwoTermExpansion) {
  const Objective f = ExampleCoverage();
  const double expect = f(ElementSet::Of({0, 1})) / 3.0 +
                        2.0 * f(ElementSet::Of({1})) / 3.0;
  EXPECT_NEAR(EvalExact(f, P({1.0 / 3, 1, 0, 0})), expect, 1e-12);
}

TEST(EvalExact, CapOnFractionalCoordinates) {
  const Poset p = Poset::Build(6, {});
  const ComplexPoint x = P({0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  try {
    EvalExact(Objective::Modular(std::vector<double>(6, 1.0)), x, 32);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(EvalExact, AgreesWithSerialReference) {
  for (int i = 0; i < 15; ++i) {
    const Instance inst = Generated(i, 7);
    Rng rng(SplitSeed(41, kStreamTests, i));
    for (int k = 0; k < 10; ++k) {
      const ComplexPoint x = RandomPoint(inst.poset(), rng);
      EXPECT_NEAR(EvalExact(inst.objective(), x),
                  EvalExactSerial(inst.objective(), inst.poset(), x), 1e-10);
    }
  }
}

TEST(SampleIdeal, DegenerateCases) {
  const Poset p = ExamplePoset();
  const Ideal t = p.MakeIdeal(ElementSet::Of({1, 3}));
  for (uint64_t s = 0; s < 20; ++s) {
    EXPECT_TRUE(SampleIdeal(p, ComplexPoint::Bottom(4), s).empty());
    EXPECT_EQ(SampleIdeal(p, IntegerPoint(p, t), s), t);
  }
}

TEST(SampleIdeal, ExampleFrequencies) {
  const Poset p = ExamplePoset();
  const ComplexPoint x = P({1.0 / 3, 1, 0, 0});
  const int n = 100000;
  int with_p1 = 0;
  for (int s = 0; s < n; ++s) {
    const Ideal d = SampleIdeal(p, x, SplitSeed(5, kStreamTests, s));
    ASSERT_TRUE(d.members() == ElementSet::Of({1}) ||
                d.members() == ElementSet::Of({0, 1}));
    with_p1 += d.Contains(0);
  }
  const double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  EXPECT_NEAR(with_p1, n / 3.0, 3 * sigma);
}

TEST(SampleIdeal, AlwaysAnIdeal) {
  Rng rng(SplitSeed(6, kStreamTests, 0));
  const Poset poset = RandomPoset(10, 0.3, rng);
  for (int k = 0; k < 200; ++k) {
    const ComplexPoint x = RandomPoint(poset, rng);
    EXPECT_TRUE(poset.IsIdeal(SampleIdeal(poset, x, k).members()));
  }
}

TEST(EvalMonteCarlo, IntegerPointIsExact) {
  const Poset p = ExamplePoset();
  const Ideal t = p.MakeIdeal(ElementSet::Of({1, 2}));
  const Estimate e =
      EvalMonteCarlo(ExampleCoverage(), p, IntegerPoint(p, t), 64, 3);
  EXPECT_DOUBLE_EQ(e.value, ExampleCoverage()(t));
  EXPECT_EQ(e.half_width, 0.0);
  EXPECT_EQ(e.samples, 64);
}

TEST(EvalMonteCarlo, ModularWithinHalfWidth) {
  const ComplexPoint x = P({0.3, 1, 0.25, 0.6});
  const Objective f = Objective::Modular({3, 5, 2, 1});
  int inside = 0;
  for (int r = 0; r < 100; ++r) {
    const Estimate e = EvalMonteCarlo(f, ExamplePoset(), x, 2000, r);
    inside += std::abs(e.value - EvalExact(f, x)) <= e.half_width;
  }
  EXPECT_GE(inside, 90);
}

TEST(EvalMonteCarlo, CoverageCoverage) {
  int inside = 0;
  for (int r = 0; r < 100; ++r) {
    const Instance inst = Generated(r % 15, 7);
    Rng rng(SplitSeed(43, kStreamTests, r));
    const ComplexPoint x = RandomInteriorPoint(inst.poset(), rng);
    const Estimate e =
        EvalMonteCarlo(inst.objective(), inst.poset(), x, 4096, r);
    inside += std::abs(e.value - EvalExact(inst.objective(), x)) <=
              e.half_width;
  }
  EXPECT_GE(inside, 90);
}

TEST(Gradient, ModularGivesWeightsOnFreeCoordinates) {
  const Poset p = ExamplePoset();
  const std::vector<double> w = {3, 5, 2, 1};
  const ComplexPoint x = P({0.3, 1, 0.25, 0});
  GradientOptions options;
  options.mode = GradientMode::kExact;
  const GradientVector g = Gradient(Objective::Modular(w), p, x, options);
  for (int q : {0, 2, 3}) {
    EXPECT_NEAR(g.values[q], w[q], 1e-12);
    EXPECT_EQ(g.kinds[q], PartialKind::kForward);
  }
  // p2 sits at 1 below a positive coordinate: no one-sided derivative.
  EXPECT_EQ(g.kinds[1], PartialKind::kZero);
  EXPECT_EQ(g.values[1], 0.0);
}

TEST(Gradient, AtBottomIsSingletonGain) {
  const Poset p = ExamplePoset();
  const Objective f = ExampleCoverage();
  GradientOptions options;
  options.mode = GradientMode::kExact;
  const GradientVector g = Gradient(f, p, ComplexPoint::Bottom(4), options);
  EXPECT_DOUBLE_EQ(g.values[0], f(ElementSet::Of({0})));
  EXPECT_DOUBLE_EQ(g.values[1], f(ElementSet::Of({1})));
  EXPECT_EQ(g.values[2], 0.0);
  EXPECT_EQ(g.kinds[2], PartialKind::kZero);
}

TEST(Gradient, BackwardWhenForwardUndefined) {
  const Poset p = ExamplePoset();
  const ComplexPoint x = P({1, 1, 0, 0});
  GradientOptions options;
  options.mode = GradientMode::kExact;
  const GradientVector g = Gradient(ExampleCoverage(), p, x, options);
  EXPECT_EQ(g.kinds[0], PartialKind::kBackward);
  EXPECT_DOUBLE_EQ(g.values[0], 2.0);
  EXPECT_EQ(g.kinds[2], PartialKind::kForward);
  EXPECT_DOUBLE_EQ(g.values[2], 1.5);
}

TEST(Gradient, MatchesSerialReferenceAndFiniteDifferences) {
  for (int i = 0; i < 10; ++i) {
    const Instance inst = Generated(i, 7);
    Rng rng(SplitSeed(44, kStreamTests, i));
    GradientOptions options;
    options.mode = GradientMode::kExact;
    for (int k = 0; k < 10; ++k) {
      const ComplexPoint x = RandomInteriorPoint(inst.poset(), rng);
      const GradientVector g = Gradient(inst.objective(), inst.poset(), x,
                                        options);
      const GradientVector s =
          GradientSerial(inst.objective(), inst.poset(), x);
      for (int p = 0; p < inst.size(); ++p) {
        EXPECT_NEAR(g.values[p], s.values[p], 1e-10);
        if (g.kinds[p] != PartialKind::kForward) continue;
        const double h = 1e-5;
        std::vector<double> hi = x.coords(), lo = x.coords();
        hi[p] += h;
        lo[p] -= h;
        const double fd = (EvalExact(inst.objective(), ComplexPoint(hi)) -
                           EvalExact(inst.objective(), ComplexPoint(lo))) /
                          (2 * h);
        EXPECT_NEAR(g.values[p], fd, 1e-4);
      }
    }
  }
}

TEST(Gradient, MonteCarloCloseToExact) {
  const Instance inst = Generated(1, 7);
  Rng rng(SplitSeed(45, kStreamTests, 0));
  const ComplexPoint x = RandomInteriorPoint(inst.poset(), rng);
  GradientOptions exact;
  exact.mode = GradientMode::kExact;
  GradientOptions mc;
  mc.mode = GradientMode::kMonteCarlo;
  mc.samples = 200000;
  mc.seed = 8;
  const GradientVector a = Gradient(inst.objective(), inst.poset(), x, exact);
  const GradientVector b = Gradient(inst.objective(), inst.poset(), x, mc);
  double scale = 1.0;
  for (double v : a.values) scale = std::max(scale, std::abs(v));
  for (int p = 0; p < inst.size(); ++p) {
    EXPECT_EQ(a.kinds[p], b.kinds[p]);
    EXPECT_NEAR(a.values[p], b.values[p], 0.05 * scale);
  }
}

TEST(CheckDrGradient, Examples) {
  const Poset chain = testing::Chain(4);
  EXPECT_TRUE(
      CheckDrGradient(Objective::Modular({4, 3, 2, 1}), chain, 200, 1).passed);
  EXPECT_TRUE(CheckDrGradient(ExampleCoverage(), ExamplePoset(), 500, 2).passed);
  const DrGradientReport bad =
      CheckDrGradient(SquaredSize(3), testing::Antichain(3), 500, 3);
  EXPECT_FALSE(bad.passed);
  EXPECT_LT(bad.lhs, bad.rhs);
}

TEST(Concavity, ExampleIsConcave) {
  const ConcavityReport r =
      CheckConcavityAlongUlm(ExampleCoverage(), ExamplePoset(),
                             ComplexPoint::Bottom(4), ComplexPoint::Top(4), 64);
  EXPECT_TRUE(r.concave);
  EXPECT_TRUE(r.faces_ok);
  EXPECT_EQ(r.faces, 1);
}

TEST(Concavity, ModularIsAffineOnEachSegment) {
  const ConcavityReport r = CheckConcavityAlongUlm(
      Objective::Modular({3, 5, 2, 1}), ExamplePoset(),
      ComplexPoint::Bottom(4), ComplexPoint::Top(4), 64);
  EXPECT_TRUE(r.concave);
  EXPECT_LE(r.worst_chord, 1e-12);
}

TEST(Concavity, SquaredSizeFails) {
  const ConcavityReport r = CheckConcavityAlongUlm(
      SquaredSize(4), ExamplePoset(), ComplexPoint::Bottom(4),
      ComplexPoint::Top(4), 64);
  EXPECT_FALSE(r.concave);
}

class MultilinearProperty : public ::testing::TestWithParam<int> {};

TEST_P(MultilinearProperty, MonotoneLiftAndCoordinateAffinity) {
  const Instance inst = Generated(GetParam(), 7);
  const Objective& f = inst.objective();
  Rng rng(SplitSeed(46, kStreamTests, GetParam()));
  for (int k = 0; k < 20; ++k) {
    const ComplexPoint a = RandomPoint(inst.poset(), rng);
    const ComplexPoint b = RandomPoint(inst.poset(), rng);
    EXPECT_LE(EvalExact(f, Meet(a, b)), EvalExact(f, Join(a, b)) + 1e-12);
    for (int p : CubeOf(inst.poset(), a).antichain) {
      std::vector<double> c0 = a.coords(), c1 = a.coords(), ch = a.coords();
      c0[p] = 0.0;
      c1[p] = 1.0;
      ch[p] = 0.37;
      const double v0 = EvalExact(f, ComplexPoint(c0));
      const double v1 = EvalExact(f, ComplexPoint(c1));
      EXPECT_NEAR(EvalExact(f, ComplexPoint(ch)), 0.63 * v0 + 0.37 * v1,
                  1e-10);
    }
  }
}

TEST_P(MultilinearProperty, FaceValuesAgreeFromBothCubes) {
  // At a point with some coordinate at exactly 1, the sum over the lower
  // cube (coordinate fractional at 1) and the upper cube give one value.
  const Instance inst = Generated(GetParam(), 7);
  Rng rng(SplitSeed(47, kStreamTests, GetParam()));
  for (int k = 0; k < 20; ++k) {
    const ComplexPoint x = RandomPoint(inst.poset(), rng);
    const double direct = EvalExact(inst.objective(), x);
    const double serial =
        EvalExactSerial(inst.objective(), inst.poset(), x);
    EXPECT_NEAR(direct, serial, 1e-12 * std::max(1.0, std::abs(direct)));
    for (int p : Ones(x)) {
      std::vector<double> below = x.coords();
      below[p] = 1.0 - 1e-9;
      if (!IsMember(inst.poset(), below)) continue;
      EXPECT_NEAR(EvalExact(inst.objective(), ComplexPoint(below)), direct,
                  1e-6 * std::max(1.0, std::abs(direct)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Generated, MultilinearProperty,
                         ::testing::Range(0, 10));

}  // namespace
}  // namespace latdr
