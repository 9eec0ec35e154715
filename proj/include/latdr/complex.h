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

#ifndef LATDR_COMPLEX_H_
#define LATDR_COMPLEX_H_

#include <vector>

#include "latdr/element_set.h"
#include "latdr/poset.h"

namespace latdr {

// Coordinates within this distance of 0 or 1 are treated as 0 or 1.
inline constexpr double kSnapTolerance = 1e-12;

// A point of [0,1]^P. Membership in the median complex is checked by
// MakePoint() and IsMember(); operations on points state it as a precondition.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::vector<double> coords)
      : coords_(std::move(coords)) {}

  static ComplexPoint Bottom(int n) {
    return ComplexPoint(std::vector<double>(n, 0.0));
  }
  static ComplexPoint Top(int n) {
    return ComplexPoint(std::vector<double>(n, 1.0));
  }

  const std::vector<double>& coords() const { return coords_; }
  double operator[](int p) const { return coords_[p]; }
  int size() const { return static_cast<int>(coords_.size()); }

  friend bool operator==(const ComplexPoint& a,
                         const ComplexPoint& b) = default;

 private:
  std::vector<double> coords_;
};

// The hypercube [0,1]^antichain with every element of `base` fixed at 1.
struct CubeId {
  ElementSet antichain;
  // Elements strictly below some antichain member.
  ElementSet base;
};

// True iff the support is an ideal and every non-maximal support element is
// at 1. Throws kOutOfBox when a coordinate leaves [0,1] by more than the snap
// tolerance and kInvalidArgument on a length mismatch.
bool IsMember(const Poset& poset, const std::vector<double>& x);

// Snaps near-integral coordinates and checks membership; throws kOutOfBox or
// kInvalidArgument.
ComplexPoint MakePoint(const Poset& poset, std::vector<double> x);

// {p : x_p > 0}, {p : x_p = 1}, {p : 0 < x_p < 1} under snapping.
ElementSet Support(const ComplexPoint& x);
ElementSet Ones(const ComplexPoint& x);
ElementSet Fractional(const ComplexPoint& x);

// Elements whose lower covers are all at 1.
ElementSet Eligible(const Poset& poset, const ComplexPoint& x);

CubeId CubeOf(const Poset& poset, const ComplexPoint& x);

ComplexPoint Meet(const ComplexPoint& x, const ComplexPoint& y);
ComplexPoint Join(const ComplexPoint& x, const ComplexPoint& y);
// Coordinatewise x <= y within the snap tolerance.
bool PointLeq(const ComplexPoint& x, const ComplexPoint& y);

ComplexPoint IntegerPoint(const Poset& poset, const Ideal& t);

}  // namespace latdr

#endif  // LATDR_COMPLEX_H_
