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

#include "latdr/generate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latdr/error.h"

namespace latdr {

Poset RandomPoset(int n, double density, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<Poset::Cover> relation;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(density)) relation.emplace_back(perm[i], perm[j]);
    }
  }
  return Poset::Build(n, TransitiveReduction(n, relation));
}

Ideal RandomIdeal(const Poset& poset, Rng& rng) {
  ElementSet s;
  for (int p : poset.TopologicalOrder()) {
    if (poset.LowerCovers(p).IsSubsetOf(s) && rng.Bernoulli(0.5)) s.Insert(p);
  }
  return poset.MakeIdeal(s);
}

ComplexPoint RandomPoint(const Poset& poset, Rng& rng) {
  const Ideal ideal = RandomIdeal(poset, rng);
  std::vector<double> x(poset.size(), 0.0);
  for (int p : ideal.members()) x[p] = 1.0;
  ElementSet fractional;
  for (int p : poset.MaximalElements(ideal.members())) {
    if (rng.Bernoulli(0.6)) {
      x[p] = rng.Uniform();
      if (x[p] > 0.0) fractional.Insert(p);
    }
  }
  for (int a : poset.Admissible(ideal)) {
    if (!poset.LowerCovers(a).Intersects(fractional) && rng.Bernoulli(0.3)) {
      x[a] = rng.Uniform();
    }
  }
  return MakePoint(poset, std::move(x));
}

ComplexPoint RandomInteriorPoint(const Poset& poset, Rng& rng) {
  const Ideal ideal = RandomIdeal(poset, rng);
  const ElementSet adm = poset.Admissible(ideal);
  ElementSet below_adm;
  for (int a : adm) below_adm |= poset.LowerCovers(a);
  std::vector<double> x(poset.size(), 0.0);
  for (int p : ideal.members()) x[p] = 1.0;
  auto interior = [&rng] { return 0.05 + 0.9 * rng.Uniform(); };
  for (int p : poset.MaximalElements(ideal.members()) - below_adm) {
    x[p] = interior();
  }
  for (int a : adm) x[a] = interior();
  return MakePoint(poset, std::move(x));
}

Poset FamilyPoset(PosetFamily family, int n, Rng& rng) {
  std::vector<Poset::Cover> covers;
  switch (family) {
    case PosetFamily::kChain:
      for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
      break;
    case PosetFamily::kAntichain:
      break;
    case PosetFamily::kForest:
      for (int i = 1; i < n; ++i) {
        if (rng.Bernoulli(0.75)) covers.emplace_back(rng.UniformInt(0, i - 1), i);
      }
      break;
    case PosetFamily::kLayered: {
      const int width =
          std::max(1, static_cast<int>(std::lround(std::sqrt(n))));
      for (int i = width; i < n; ++i) {
        const int layer = i / width;
        const int lo = (layer - 1) * width;
        const int hi = layer * width - 1;
        const int first = rng.UniformInt(lo, hi);
        covers.emplace_back(first, i);
        const int second = rng.UniformInt(lo, hi);
        if (second != first && rng.Bernoulli(0.4)) covers.emplace_back(second, i);
      }
      break;
    }
    case PosetFamily::kRandom:
      return RandomPoset(n, 0.3, rng);
  }
  return Poset::Build(n, covers);
}

PosetFamily ParsePosetFamily(const std::string& name) {
  if (name == "chain") return PosetFamily::kChain;
  if (name == "antichain") return PosetFamily::kAntichain;
  if (name == "forest") return PosetFamily::kForest;
  if (name == "layered") return PosetFamily::kLayered;
  if (name == "random") return PosetFamily::kRandom;
  throw Error(ErrorCode::kInvalidArgument, "unknown poset family '" + name + "'");
}

namespace {

// Weights that never increase along the order.
std::vector<double> DecreasingWeights(const Poset& poset, Rng& rng) {
  std::vector<double> w(poset.size(), 0.0);
  for (int p : poset.TopologicalOrder()) {
    if (poset.LowerCovers(p).empty()) {
      w[p] = 1.0 + 9.0 * rng.Uniform();
    } else {
      double cap = 1e300;
      for (int l : poset.LowerCovers(p)) cap = std::min(cap, w[l]);
      w[p] = cap * (0.5 + 0.5 * rng.Uniform());
    }
  }
  return w;
}

// Each sensor gets private items plus a share of a common pool, and for
// p < q the total weight of q stays below the private weight of p, which
// makes the coverage function DR on the ideal lattice.
Objective DrCoverage(const Poset& poset, Rng& rng) {
  const int n = poset.size();
  std::vector<double> item_weights;
  std::vector<std::vector<int>> sensors(n);
  const int pool = std::max(2, n);
  for (int i = 0; i < pool; ++i) item_weights.push_back(0.2 + 0.8 * rng.Uniform());
  std::vector<double> private_weight(n, 0.0);
  for (int p : poset.TopologicalOrder()) {
    double limit = 1e300;
    for (int l : poset.Down(p)) {
      if (l != p) limit = std::min(limit, private_weight[l]);
    }
    const double target =
        limit > 1e299 ? 4.0 + 6.0 * rng.Uniform() : limit * (0.5 + 0.45 * rng.Uniform());
    const double own = target * (0.4 + 0.4 * rng.Uniform());
    const int pieces = rng.UniformInt(1, 2);
    for (int k = 0; k < pieces; ++k) {
      sensors[p].push_back(static_cast<int>(item_weights.size()));
      item_weights.push_back(own / pieces);
    }
    private_weight[p] = own;
    double shared = 0.0;
    std::vector<int> order(pool);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (int item : order) {
      if (shared + item_weights[item] > target - own) continue;
      if (!rng.Bernoulli(0.5)) continue;
      sensors[p].push_back(item);
      shared += item_weights[item];
    }
    std::sort(sensors[p].begin(), sensors[p].end());
  }
  return Objective::Coverage(std::move(item_weights), std::move(sensors));
}

std::vector<double> OrderConsistentCosts(const Poset& poset, bool unit,
                                         Rng& rng) {
  std::vector<double> c(poset.size(), 1.0);
  if (unit) return c;
  for (int p : poset.TopologicalOrder()) {
    double base = 0.5 + rng.Uniform();
    for (int l : poset.LowerCovers(p)) {
      base = std::max(base, c[l] + 0.5 * rng.Uniform());
    }
    c[p] = base;
  }
  return c;
}

Instance Draw(const GeneratorParams& params, Rng& rng) {
  Poset poset = FamilyPoset(params.family, params.n, rng);
  Objective objective;
  switch (params.objective) {
    case ObjectiveKind::kModular:
      objective = Objective::Modular(DecreasingWeights(poset, rng));
      break;
    case ObjectiveKind::kCoverage:
      objective = DrCoverage(poset, rng);
      break;
    case ObjectiveKind::kConcave: {
      std::vector<double> w = DecreasingWeights(poset, rng);
      double total = std::accumulate(w.begin(), w.end(), 0.0);
      objective = Objective::ConcaveModular(params.shape, std::move(w),
                                            0.6 * total);
      break;
    }
  }
  std::vector<CostFunction> constraints;
  for (int k = 0; k < params.constraints; ++k) {
    std::vector<double> c = OrderConsistentCosts(poset, params.unit_costs, rng);
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    constraints.emplace_back("c" + std::to_string(k), std::move(c),
                             params.budget_fraction * total);
  }
  return Instance::Create(std::move(poset), std::move(objective),
                          std::move(constraints));
}

}  // namespace

Instance GenerateInstance(const GeneratorParams& params) {
  if (params.n < 0 || params.n > kMaxElements) {
    throw Error(ErrorCode::kInvalidArgument, "element count out of range");
  }
  if (params.constraints < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative constraint count");
  }
  if (!(params.budget_fraction >= 0.0) || !std::isfinite(params.budget_fraction)) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget fraction must be finite and nonnegative");
  }
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Rng rng(SplitSeed(params.seed, kStreamGenerator, attempt));
    Instance instance = Draw(params, rng);
    const InstanceValidation v = ValidateInstance(instance, int64_t{1} << 16);
    if (v.passed() && !v.assumed) return instance;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no candidate passed validation in " +
                  std::to_string(params.max_attempts) + " attempts");
}

std::vector<Instance> StandardSuite(int count, uint64_t seed) {
  static constexpr PosetFamily kFamilies[] = {
      PosetFamily::kForest, PosetFamily::kLayered, PosetFamily::kRandom,
      PosetFamily::kChain, PosetFamily::kAntichain};
  static constexpr ObjectiveKind kObjectives[] = {
      ObjectiveKind::kCoverage, ObjectiveKind::kConcave,
      ObjectiveKind::kModular};
  std::vector<Instance> suite;
  for (int i = 0; i < count; ++i) {
    GeneratorParams params;
    params.family = kFamilies[i % 5];
    params.objective = kObjectives[i % 3];
    params.shape = (i % 2 == 0) ? ConcaveShape::kSqrt : ConcaveShape::kLog1p;
    params.n = 4 + i % 5;
    params.constraints = 1 + (i / 5) % 2;
    params.budget_fraction = 0.3 + 0.1 * (i % 4);
    params.seed = SplitSeed(seed, kStreamGenerator, 1000 + i);
    suite.push_back(GenerateInstance(params));
  }
  return suite;
}

}  // namespace latdr
