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

#include "latdr/poset.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "latdr/error.h"
#include "latdr/generate.h"
#include "latdr/rng.h"
#include "test_util.h"

namespace latdr {
namespace {

using testing::Antichain;
using testing::Chain;
using testing::ExamplePoset;

ErrorCode BuildError(int n, const std::vector<Poset::Cover>& covers) {
  try {
    Poset::Build(n, covers);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

TEST(PosetBuild, ExamplePoset) {
  const Poset p = ExamplePoset();
  EXPECT_EQ(p.size(), 4);
  EXPECT_TRUE(p.Leq(1, 2));
  EXPECT_TRUE(p.Leq(1, 3));
  EXPECT_FALSE(p.Comparable(0, 1));
  EXPECT_FALSE(p.Comparable(2, 3));
  EXPECT_TRUE(p.Leq(2, 2));
}

TEST(PosetBuild, SingleElement) {
  const Poset p = Poset::Build(1, {});
  EXPECT_EQ(p.size(), 1);
  EXPECT_EQ(p.EnumerateIdeals(10).size(), 2u);
}

TEST(PosetBuild, RejectsCycle) {
  EXPECT_EQ(BuildError(2, {{0, 1}, {1, 0}}), ErrorCode::kCycleDetected);
  EXPECT_EQ(BuildError(3, {{0, 1}, {1, 2}, {2, 0}}),
            ErrorCode::kCycleDetected);
  EXPECT_EQ(BuildError(1, {{0, 0}}), ErrorCode::kCycleDetected);
}

TEST(PosetBuild, RejectsImpliedCover) {
  EXPECT_EQ(BuildError(3, {{0, 1}, {1, 2}, {0, 2}}), ErrorCode::kNotReduced);
}

TEST(PosetBuild, RejectsBadIndicesAndDuplicates) {
  EXPECT_EQ(BuildError(2, {{0, 2}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(BuildError(2, {{0, 1}, {0, 1}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(BuildError(65, {}), ErrorCode::kInvalidArgument);
}

TEST(PosetIdeals, IsIdeal) {
  const Poset p = ExamplePoset();
  EXPECT_TRUE(p.IsIdeal(ElementSet::Of({1, 2})));
  EXPECT_FALSE(p.IsIdeal(ElementSet::Of({2})));
  EXPECT_TRUE(p.IsIdeal(ElementSet()));
}

TEST(PosetIdeals, PrincipalIdeal) {
  const Poset p = ExamplePoset();
  EXPECT_EQ(p.PrincipalIdeal(2).members(), ElementSet::Of({1, 2}));
  EXPECT_EQ(p.PrincipalIdeal(0).members(), ElementSet::Of({0}));
  EXPECT_EQ(Chain(3).PrincipalIdeal(2).members(), ElementSet::Of({0, 1, 2}));
}

TEST(PosetIdeals, Admissible) {
  const Poset p = ExamplePoset();
  EXPECT_EQ(p.Admissible(Ideal()), ElementSet::Of({0, 1}));
  EXPECT_EQ(p.Admissible(p.MakeIdeal(ElementSet::Of({0, 1}))),
            ElementSet::Of({2, 3}));
  EXPECT_TRUE(p.Admissible(p.FullIdeal()).empty());
}

TEST(PosetIdeals, MakeIdealRejectsNonIdeal) {
  const Poset p = ExamplePoset();
  try {
    p.MakeIdeal(ElementSet::Of({3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAnIdeal);
  }
}

TEST(PosetIdeals, ExamplePosetHasTenIdeals) {
  const Poset p = ExamplePoset();
  EXPECT_EQ(p.EnumerateIdeals(100).size(), 10u);
  int brute = 0;
  for (uint64_t m = 0; m < 16; ++m) brute += testing::IsIdealBrute(p, m);
  EXPECT_EQ(brute, 10);
}

TEST(PosetIdeals, ChainAndAntichainCounts) {
  for (int k = 1; k <= 16; ++k) {
    EXPECT_EQ(Chain(k).CountIdeals(1 << 20), k + 1);
    EXPECT_EQ(Antichain(k).CountIdeals(1 << 20), int64_t{1} << k);
  }
}

TEST(PosetIdeals, CapExceeded) {
  try {
    Antichain(5).EnumerateIdeals(31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
  EXPECT_EQ(Antichain(5).CountIdeals(31), -1);
}

TEST(PosetIdeals, SubsetsPrecedeSupersets) {
  const Poset p = ExamplePoset();
  const std::vector<Ideal> ideals = p.EnumerateIdeals(100);
  for (size_t i = 0; i < ideals.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      EXPECT_FALSE(ideals[i].members().IsSubsetOf(ideals[j].members()) &&
                   ideals[i] != ideals[j]);
    }
  }
}

TEST(PosetOrder, TopologicalOrder) {
  EXPECT_EQ(ExamplePoset().TopologicalOrder(), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(Chain(4).TopologicalOrder(), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(Antichain(3).TopologicalOrder(), (std::vector<int>{0, 1, 2}));
  // Index tie-break on a poset whose covers run against index order.
  const Poset rev = Poset::Build(3, {{2, 0}, {1, 0}});
  EXPECT_EQ(rev.TopologicalOrder(), (std::vector<int>{1, 2, 0}));
}

TEST(PosetOrder, InducedAndRelabeled) {
  const Poset chain = Chain(4);
  std::vector<int> to_parent;
  const Poset sub = chain.Induced(ElementSet::Of({0, 2, 3}), &to_parent);
  EXPECT_EQ(to_parent, (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(sub.covers().size(), 2u);
  EXPECT_TRUE(sub.Leq(0, 2));
  const Poset rel = ExamplePoset().Relabeled({3, 2, 1, 0});
  EXPECT_TRUE(rel.Leq(2, 1));
  EXPECT_TRUE(rel.Leq(2, 0));
}

class PosetProperty : public ::testing::TestWithParam<int> {};

TEST_P(PosetProperty, AdmissibleMatchesDefinition) {
  Rng rng(SplitSeed(3, kStreamTests, GetParam()));
  const Poset p = RandomPoset(7, 0.35, rng);
  for (const Ideal& x : p.EnumerateIdeals(1 << 12)) {
    const ElementSet adm = p.Admissible(x);
    for (int q = 0; q < p.size(); ++q) {
      if (x.Contains(q)) continue;
      const bool grows = p.IsIdeal(x.members() | ElementSet::Single(q));
      EXPECT_EQ(adm.Contains(q), grows);
    }
  }
}

TEST_P(PosetProperty, IdealsFormDistributiveLattice) {
  Rng rng(SplitSeed(4, kStreamTests, GetParam()));
  const Poset p = RandomPoset(7, 0.3, rng);
  const std::vector<Ideal> ideals = p.EnumerateIdeals(1 << 12);
  std::set<uint64_t> masks;
  for (const Ideal& x : ideals) masks.insert(x.members().mask());
  EXPECT_EQ(masks.size(), ideals.size());
  int brute = 0;
  for (uint64_t m = 0; m < (uint64_t{1} << p.size()); ++m) {
    brute += testing::IsIdealBrute(p, m);
  }
  EXPECT_EQ(brute, static_cast<int>(ideals.size()));
  for (const Ideal& a : ideals) {
    for (const Ideal& b : ideals) {
      EXPECT_TRUE(masks.count((a.members() | b.members()).mask()));
      EXPECT_TRUE(masks.count((a.members() & b.members()).mask()));
    }
  }
}

TEST_P(PosetProperty, CoversAreReducedAndTopoOrderIsLinearExtension) {
  Rng rng(SplitSeed(5, kStreamTests, GetParam()));
  const Poset p = RandomPoset(9, 0.4, rng);
  const std::vector<int>& order = p.TopologicalOrder();
  std::vector<int> pos(p.size());
  for (int i = 0; i < p.size(); ++i) pos[order[i]] = i;
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (p.Less(a, b)) EXPECT_LT(pos[a], pos[b]);
    }
  }
  for (const auto& [a, b] : p.covers()) {
    for (int c = 0; c < p.size(); ++c) {
      EXPECT_FALSE(p.Less(a, c) && p.Less(c, b));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Random, PosetProperty, ::testing::Range(0, 12));

}  // namespace
}  // namespace latdr
