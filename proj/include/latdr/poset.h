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

#ifndef LATDR_POSET_H_
#define LATDR_POSET_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "latdr/element_set.h"

namespace latdr {

class Poset;

// A downward-closed subset of a poset. Only Poset can mint one, so holding an
// Ideal means the closure property was checked or holds by construction.
class Ideal {
 public:
  // The empty ideal, valid in every poset.
  Ideal() = default;

  ElementSet members() const { return members_; }
  bool Contains(int p) const { return members_.Contains(p); }
  int size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  friend bool operator==(const Ideal& a, const Ideal& b) = default;

 private:
  friend class Poset;
  explicit Ideal(ElementSet members) : members_(members) {}

  ElementSet members_;
};

// Finite poset on elements 0..n-1 given by its cover relation. Immutable after
// Build(); all derived relations are precomputed bit masks.
class Poset {
 public:
  using Cover = std::pair<int, int>;

  // The empty poset.
  Poset() = default;

  // Validates and builds. `covers` holds pairs (p, q) meaning p is covered by
  // q. Throws kCycleDetected on a directed cycle (including p == q),
  // kNotReduced when a pair is implied by a longer path, and
  // kInvalidArgument on bad indices, duplicates, or n > kMaxElements.
  static Poset Build(int n, const std::vector<Cover>& covers);

  int size() const { return n_; }
  const std::vector<Cover>& covers() const { return covers_; }
  ElementSet All() const { return ElementSet::FirstN(n_); }

  bool Leq(int p, int q) const { return down_[q].Contains(p); }
  bool Less(int p, int q) const { return p != q && Leq(p, q); }
  bool Comparable(int p, int q) const { return Leq(p, q) || Leq(q, p); }
  // {p' : p' <= p}.
  ElementSet Down(int p) const { return down_[p]; }
  // {q : p <= q}.
  ElementSet Up(int p) const { return up_[p]; }
  ElementSet LowerCovers(int p) const { return lower_covers_[p]; }
  ElementSet UpperCovers(int p) const { return upper_covers_[p]; }

  bool IsIdeal(ElementSet s) const;
  bool IsAntichain(ElementSet s) const;
  // Elements of `s` with nothing of `s` strictly above / below them.
  ElementSet MaximalElements(ElementSet s) const;
  ElementSet MinimalElements(ElementSet s) const;
  // Union of principal ideals of members of `s`.
  ElementSet DownClosureOf(ElementSet s) const;

  // Throws kNotAnIdeal if `s` is not downward closed.
  Ideal MakeIdeal(ElementSet s) const;
  Ideal PrincipalIdeal(int p) const { return Ideal(down_[p]); }
  Ideal DownClosure(ElementSet s) const { return Ideal(DownClosureOf(s)); }
  Ideal FullIdeal() const { return Ideal(All()); }
  Ideal Union(const Ideal& a, const Ideal& b) const {
    return Ideal(a.members() | b.members());
  }
  Ideal Intersection(const Ideal& a, const Ideal& b) const {
    return Ideal(a.members() & b.members());
  }

  // Minimal elements of the complement of `x`.
  ElementSet Admissible(const Ideal& x) const;
  // x + {p}; throws kNotAnIdeal unless p is admissible for x.
  Ideal Add(const Ideal& x, int p) const;

  // All ideals, each once, sorted by (size, mask) so subsets come first.
  // Throws kCapExceeded when there are more than `cap`.
  std::vector<Ideal> EnumerateIdeals(int64_t cap) const;
  // Number of ideals, or -1 if it exceeds `cap`.
  int64_t CountIdeals(int64_t cap) const;

  // Linear extension, smallest available index first.
  const std::vector<int>& TopologicalOrder() const { return topo_; }

  // The subposet induced on `subset`, relabeled 0..|subset|-1 in increasing
  // parent index. `to_parent`, if given, receives the labeling.
  Poset Induced(ElementSet subset, std::vector<int>* to_parent) const;
  // The isomorphic poset where element p is renamed perm[p].
  Poset Relabeled(const std::vector<int>& perm) const;

  // Lifts a set of the induced poset back to parent labels.
  static ElementSet LiftSet(ElementSet local, const std::vector<int>& to_parent);

 private:
  int n_ = 0;
  std::vector<Cover> covers_;
  std::vector<ElementSet> down_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> lower_covers_;
  std::vector<ElementSet> upper_covers_;
  std::vector<int> topo_;
};

// Cover pairs of the order generated by `relation` (any acyclic set of pairs
// p < q). Throws kCycleDetected.
std::vector<Poset::Cover> TransitiveReduction(
    int n, const std::vector<Poset::Cover>& relation);

}  // namespace latdr

#endif  // LATDR_POSET_H_
