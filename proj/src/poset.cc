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

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "latdr/error.h"

namespace latdr {
namespace {

std::string PairText(int p, int q) {
  return "(" + std::to_string(p) + ", " + std::to_string(q) + ")";
}

// Kahn's algorithm with a min-heap; returns fewer than n entries on a cycle.
std::vector<int> SmallestFirstOrder(int n,
                                    const std::vector<ElementSet>& succ) {
  std::vector<int> indegree(n, 0);
  for (int p = 0; p < n; ++p) {
    for (int q : succ[p]) ++indegree[q];
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int p = 0; p < n; ++p) {
    if (indegree[p] == 0) ready.push(p);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int p = ready.top();
    ready.pop();
    order.push_back(p);
    for (int q : succ[p]) {
      if (--indegree[q] == 0) ready.push(q);
    }
  }
  return order;
}

void CheckRange(int n, const std::vector<Poset::Cover>& pairs) {
  if (n < 0 || n > kMaxElements) {
    throw Error(ErrorCode::kInvalidArgument,
                "element count " + std::to_string(n) + " outside [0, " +
                    std::to_string(kMaxElements) + "]");
  }
  for (const auto& [p, q] : pairs) {
    if (p < 0 || p >= n || q < 0 || q >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cover " + PairText(p, q) + " has an index out of range");
    }
    if (p == q) {
      throw Error(ErrorCode::kCycleDetected,
                  "self-loop at element " + std::to_string(p));
    }
  }
}

// Strict-upper reachability sets, or throws on a cycle.
std::vector<ElementSet> StrictUpSets(int n, const std::vector<ElementSet>& succ,
                                     std::vector<int>* order_out) {
  std::vector<int> order = SmallestFirstOrder(n, succ);
  if (static_cast<int>(order.size()) != n) {
    ElementSet stuck = ElementSet::FirstN(n);
    for (int p : order) stuck.Erase(p);
    throw Error(ErrorCode::kCycleDetected,
                "cover digraph has a cycle through element " +
                    std::to_string(stuck.Min()));
  }
  std::vector<ElementSet> above(n);
  for (int i = n - 1; i >= 0; --i) {
    const int p = order[i];
    for (int q : succ[p]) above[p] |= ElementSet::Single(q) | above[q];
  }
  if (order_out != nullptr) *order_out = std::move(order);
  return above;
}

}  // namespace

std::vector<Poset::Cover> TransitiveReduction(
    int n, const std::vector<Poset::Cover>& relation) {
  CheckRange(n, relation);
  std::vector<ElementSet> succ(n);
  for (const auto& [p, q] : relation) succ[p].Insert(q);
  const std::vector<ElementSet> above = StrictUpSets(n, succ, nullptr);
  std::vector<Poset::Cover> covers;
  for (int p = 0; p < n; ++p) {
    for (int q : above[p]) {
      bool implied = false;
      for (int r : above[p]) {
        if (r != q && above[r].Contains(q)) {
          implied = true;
          break;
        }
      }
      if (!implied) covers.emplace_back(p, q);
    }
  }
  return covers;
}

Poset Poset::Build(int n, const std::vector<Cover>& covers) {
  CheckRange(n, covers);
  std::set<Cover> seen;
  for (const Cover& c : covers) {
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate cover " + PairText(c.first, c.second));
    }
  }
  Poset poset;
  poset.n_ = n;
  poset.covers_ = covers;
  poset.lower_covers_.assign(n, ElementSet());
  poset.upper_covers_.assign(n, ElementSet());
  for (const auto& [p, q] : covers) {
    poset.upper_covers_[p].Insert(q);
    poset.lower_covers_[q].Insert(p);
  }
  const std::vector<ElementSet> above =
      StrictUpSets(n, poset.upper_covers_, &poset.topo_);
  for (const auto& [p, q] : covers) {
    for (int r : poset.upper_covers_[p]) {
      if (r != q && above[r].Contains(q)) {
        throw Error(ErrorCode::kNotReduced,
                    "cover " + PairText(p, q) + " is implied via element " +
                        std::to_string(r));
      }
    }
  }
  poset.up_.resize(n);
  poset.down_.assign(n, ElementSet());
  for (int p = 0; p < n; ++p) {
    poset.up_[p] = above[p] | ElementSet::Single(p);
    for (int q : poset.up_[p]) poset.down_[q].Insert(p);
  }
  return poset;
}

bool Poset::IsIdeal(ElementSet s) const {
  if (!s.IsSubsetOf(All())) return false;
  for (int p : s) {
    if (!lower_covers_[p].IsSubsetOf(s)) return false;
  }
  return true;
}

bool Poset::IsAntichain(ElementSet s) const {
  for (int p : s) {
    if ((down_[p] & s) != ElementSet::Single(p)) return false;
  }
  return true;
}

ElementSet Poset::MaximalElements(ElementSet s) const {
  ElementSet result;
  for (int p : s) {
    if ((up_[p] & s) == ElementSet::Single(p)) result.Insert(p);
  }
  return result;
}

ElementSet Poset::MinimalElements(ElementSet s) const {
  ElementSet result;
  for (int p : s) {
    if ((down_[p] & s) == ElementSet::Single(p)) result.Insert(p);
  }
  return result;
}

ElementSet Poset::DownClosureOf(ElementSet s) const {
  ElementSet result;
  for (int p : s) result |= down_[p];
  return result;
}

Ideal Poset::MakeIdeal(ElementSet s) const {
  if (!s.IsSubsetOf(All())) {
    throw Error(ErrorCode::kNotAnIdeal, "set contains unknown elements");
  }
  for (int p : s) {
    const ElementSet missing = lower_covers_[p] - s;
    if (!missing.empty()) {
      throw Error(ErrorCode::kNotAnIdeal,
                  "element " + std::to_string(p) + " present without " +
                      std::to_string(missing.Min()));
    }
  }
  return Ideal(s);
}

ElementSet Poset::Admissible(const Ideal& x) const {
  ElementSet result;
  for (int p : All() - x.members()) {
    if (lower_covers_[p].IsSubsetOf(x.members())) result.Insert(p);
  }
  return result;
}

Ideal Poset::Add(const Ideal& x, int p) const {
  if (p < 0 || p >= n_ || x.Contains(p) ||
      !lower_covers_[p].IsSubsetOf(x.members())) {
    throw Error(ErrorCode::kNotAnIdeal,
                "element " + std::to_string(p) + " is not admissible");
  }
  ElementSet s = x.members();
  s.Insert(p);
  return Ideal(s);
}

namespace {

// Include/exclude recursion along a linear extension: an element may be
// included only when all of its lower covers are.
class IdealWalker {
 public:
  IdealWalker(const std::vector<int>& order,
              const std::vector<ElementSet>& lower, int64_t cap,
              std::vector<ElementSet>* sets)
      : order_(order), lower_(lower), cap_(cap), sets_(sets) {}

  bool Run() { return Walk(0, ElementSet()); }
  int64_t count() const { return count_; }

 private:
  bool Walk(size_t i, ElementSet current) {
    if (i == order_.size()) {
      if (++count_ > cap_) return false;
      if (sets_ != nullptr) sets_->push_back(current);
      return true;
    }
    if (!Walk(i + 1, current)) return false;
    const int p = order_[i];
    if (lower_[p].IsSubsetOf(current)) {
      current.Insert(p);
      return Walk(i + 1, current);
    }
    return true;
  }

  const std::vector<int>& order_;
  const std::vector<ElementSet>& lower_;
  int64_t cap_;
  std::vector<ElementSet>* sets_;
  int64_t count_ = 0;
};

}  // namespace

std::vector<Ideal> Poset::EnumerateIdeals(int64_t cap) const {
  std::vector<ElementSet> sets;
  IdealWalker walker(topo_, lower_covers_, cap, &sets);
  if (!walker.Run()) {
    throw Error(ErrorCode::kCapExceeded,
                "ideal count exceeds cap " + std::to_string(cap));
  }
  std::sort(sets.begin(), sets.end(), [](ElementSet a, ElementSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask() < b.mask();
  });
  std::vector<Ideal> ideals;
  ideals.reserve(sets.size());
  for (ElementSet s : sets) ideals.push_back(Ideal(s));
  return ideals;
}

int64_t Poset::CountIdeals(int64_t cap) const {
  IdealWalker walker(topo_, lower_covers_, cap, nullptr);
  return walker.Run() ? walker.count() : -1;
}

Poset Poset::Induced(ElementSet subset, std::vector<int>* to_parent) const {
  std::vector<int> parent = subset.ToVector();
  std::vector<int> local(n_, -1);
  for (size_t i = 0; i < parent.size(); ++i) local[parent[i]] = i;
  std::vector<Cover> relation;
  for (int p : subset) {
    for (int q : up_[p] & subset) {
      if (q != p) relation.emplace_back(local[p], local[q]);
    }
  }
  const int m = static_cast<int>(parent.size());
  Poset result = Build(m, TransitiveReduction(m, relation));
  if (to_parent != nullptr) *to_parent = std::move(parent);
  return result;
}

Poset Poset::Relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
  }
  std::vector<Cover> covers;
  covers.reserve(covers_.size());
  for (const auto& [p, q] : covers_) covers.emplace_back(perm[p], perm[q]);
  return Build(n_, covers);
}

ElementSet Poset::LiftSet(ElementSet local,
                          const std::vector<int>& to_parent) {
  ElementSet result;
  for (int i : local) result.Insert(to_parent[i]);
  return result;
}

}  // namespace latdr
