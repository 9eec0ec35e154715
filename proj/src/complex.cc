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

#include "latdr/complex.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "latdr/error.h"

namespace latdr {
namespace {

bool IsOne(double v) { return v >= 1.0 - kSnapTolerance; }
bool IsPositive(double v) { return v > kSnapTolerance; }

}  // namespace

bool IsMember(const Poset& poset, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != poset.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "point has " + std::to_string(x.size()) + " coordinates, poset " +
                    std::to_string(poset.size()));
  }
  for (size_t p = 0; p < x.size(); ++p) {
    if (!(x[p] >= -kSnapTolerance && x[p] <= 1.0 + kSnapTolerance)) {
      throw Error(ErrorCode::kOutOfBox,
                  "coordinate " + std::to_string(p) + " = " +
                      std::to_string(x[p]) + " outside [0,1]");
    }
  }
  for (int p = 0; p < poset.size(); ++p) {
    if (!IsPositive(x[p])) continue;
    for (int lower : poset.LowerCovers(p)) {
      if (!IsOne(x[lower])) return false;
    }
  }
  return true;
}

ComplexPoint MakePoint(const Poset& poset, std::vector<double> x) {
  if (!IsMember(poset, x)) {
    throw Error(ErrorCode::kInvalidArgument, "point is not in the complex");
  }
  for (double& v : x) {
    if (!IsPositive(v)) v = 0.0;
    if (IsOne(v)) v = 1.0;
  }
  return ComplexPoint(std::move(x));
}

ElementSet Support(const ComplexPoint& x) {
  ElementSet s;
  for (int p = 0; p < x.size(); ++p) {
    if (IsPositive(x[p])) s.Insert(p);
  }
  return s;
}

ElementSet Ones(const ComplexPoint& x) {
  ElementSet s;
  for (int p = 0; p < x.size(); ++p) {
    if (IsOne(x[p])) s.Insert(p);
  }
  return s;
}

ElementSet Fractional(const ComplexPoint& x) {
  return Support(x) - Ones(x);
}

ElementSet Eligible(const Poset& poset, const ComplexPoint& x) {
  const ElementSet ones = Ones(x);
  ElementSet s;
  for (int p = 0; p < poset.size(); ++p) {
    if (poset.LowerCovers(p).IsSubsetOf(ones)) s.Insert(p);
  }
  return s;
}

CubeId CubeOf(const Poset& poset, const ComplexPoint& x) {
  CubeId cube;
  cube.antichain = poset.MaximalElements(Support(x) | Eligible(poset, x));
  cube.base = poset.DownClosureOf(cube.antichain) - cube.antichain;
  return cube;
}

ComplexPoint Meet(const ComplexPoint& x, const ComplexPoint& y) {
  std::vector<double> z(x.size());
  for (int p = 0; p < x.size(); ++p) z[p] = std::min(x[p], y[p]);
  return ComplexPoint(std::move(z));
}

ComplexPoint Join(const ComplexPoint& x, const ComplexPoint& y) {
  std::vector<double> z(x.size());
  for (int p = 0; p < x.size(); ++p) z[p] = std::max(x[p], y[p]);
  return ComplexPoint(std::move(z));
}

bool PointLeq(const ComplexPoint& x, const ComplexPoint& y) {
  for (int p = 0; p < x.size(); ++p) {
    if (x[p] > y[p] + kSnapTolerance) return false;
  }
  return true;
}

ComplexPoint IntegerPoint(const Poset& poset, const Ideal& t) {
  std::vector<double> z(poset.size(), 0.0);
  for (int p : t.members()) z[p] = 1.0;
  return ComplexPoint(std::move(z));
}

}  // namespace latdr
