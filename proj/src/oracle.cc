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

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "latdr/error.h"

// Deliberately self-contained: nothing here calls the enumeration, cube or
// multilinear code of the solver.

namespace latdr {
namespace {

// Elements sorted by the size of their down-set, a linear extension.
std::vector<int> ByHeight(const Poset& poset) {
  const int n = poset.size();
  std::vector<int> height(n, 0);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) height[p] += poset.Leq(q, p) ? 1 : 0;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return height[a] < height[b]; });
  return order;
}

bool PredecessorsIn(const Poset& poset, int p, uint64_t mask) {
  for (int q = 0; q < poset.size(); ++q) {
    if (q != p && poset.Leq(q, p) && !(mask >> q & 1)) return false;
  }
  return true;
}

double CostOf(const CostFunction& c, uint64_t mask) {
  double total = 0.0;
  for (int p = 0; p < c.size(); ++p) {
    if (mask >> p & 1) total += c.weight(p);
  }
  return total;
}

bool FeasibleMask(const Instance& instance, uint64_t mask) {
  for (const CostFunction& c : instance.constraints()) {
    if (CostOf(c, mask) > c.budget() + 1e-9) return false;
  }
  return true;
}

}  // namespace

OracleResult ExactOpt(const Instance& instance, int64_t cap) {
  const Poset& poset = instance.poset();
  const std::vector<int> order = ByHeight(poset);
  OracleResult best;
  uint64_t best_mask = 0;
  bool found = false;
  auto consider = [&](uint64_t mask) {
    if (++best.enumerated > cap) {
      throw Error(ErrorCode::kCapExceeded,
                  "more than " + std::to_string(cap) + " ideals");
    }
    if (!FeasibleMask(instance, mask)) return;
    ++best.feasible;
    const double v = instance.objective()(ElementSet::FromMask(mask));
    if (!found || v > best.value || (v == best.value && mask < best_mask)) {
      found = true;
      best.value = v;
      best_mask = mask;
    }
  };
  auto walk = [&](auto&& self, size_t i, uint64_t mask) -> void {
    if (i == order.size()) {
      consider(mask);
      return;
    }
    const int p = order[i];
    self(self, i + 1, mask);
    if (PredecessorsIn(poset, p, mask)) {
      self(self, i + 1, mask | (uint64_t{1} << p));
    }
  };
  walk(walk, 0, 0);
  best.optimum = poset.MakeIdeal(ElementSet::FromMask(best_mask));
  return best;
}

GridOptimum ExactMultilinearOptOnGrid(const Instance& instance, int resolution,
                                      int64_t cap) {
  if (resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 1");
  }
  const Poset& poset = instance.poset();
  const int n = poset.size();
  const std::vector<int> order = ByHeight(poset);
  const auto& f = instance.objective();

  auto value = [&](const std::vector<double>& x) {
    uint64_t ones = 0;
    std::vector<int> frac;
    for (int p = 0; p < n; ++p) {
      if (x[p] >= 1.0) {
        ones |= uint64_t{1} << p;
      } else if (x[p] > 0.0) {
        frac.push_back(p);
      }
    }
    double total = 0.0;
    const uint64_t subsets = uint64_t{1} << frac.size();
    for (uint64_t s = 0; s < subsets; ++s) {
      double prob = 1.0;
      uint64_t mask = ones;
      for (size_t j = 0; j < frac.size(); ++j) {
        if (s >> j & 1) {
          prob *= x[frac[j]];
          mask |= uint64_t{1} << frac[j];
        } else {
          prob *= 1.0 - x[frac[j]];
        }
      }
      total += prob * f(ElementSet::FromMask(mask));
    }
    return total;
  };

  GridOptimum best;
  bool found = false;
  std::vector<double> x(n, 0.0);
  auto walk = [&](auto&& self, size_t i) -> void {
    if (i == order.size()) {
      if (++best.points > cap) {
        throw Error(ErrorCode::kCapExceeded,
                    "more than " + std::to_string(cap) + " grid points");
      }
      for (const CostFunction& c : instance.constraints()) {
        double used = 0.0;
        for (int p = 0; p < n; ++p) used += c.weight(p) * x[p];
        if (used > c.budget() + 1e-9) return;
      }
      const double v = value(x);
      if (!found || v > best.value) {
        found = true;
        best.value = v;
        best.point = ComplexPoint(x);
      }
      return;
    }
    const int p = order[i];
    bool open = true;
    for (int q : poset.LowerCovers(p)) open = open && x[q] >= 1.0;
    const int top = open ? resolution : 0;
    for (int k = 0; k <= top; ++k) {
      x[p] = static_cast<double>(k) / resolution;
      self(self, i + 1);
    }
    x[p] = 0.0;
  };
  walk(walk, 0);
  return best;
}

}  // namespace latdr
