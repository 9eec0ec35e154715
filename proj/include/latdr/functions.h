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

#ifndef LATDR_FUNCTIONS_H_
#define LATDR_FUNCTIONS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "latdr/element_set.h"
#include "latdr/poset.h"

namespace latdr {

// Tolerance used by every structural validator.
inline constexpr double kValidatorTolerance = 1e-9;

enum class ObjectiveFamily {
  kModular,
  kCoverage,
  kConcaveModular,
  kTable,
  kCustom,
  kResidual,
};

// phi in f(X) = phi(sum of weights).
enum class ConcaveShape { kSqrt, kLog1p, kMin };

// The parameters that define an objective, kept for serialization.
struct ObjectiveDescriptor {
  ObjectiveFamily family = ObjectiveFamily::kModular;
  // Modular and concave-of-modular.
  std::vector<double> weights;
  // Concave-of-modular.
  ConcaveShape shape = ConcaveShape::kSqrt;
  double cap = 0.0;  // used by kMin only
  // Coverage.
  std::vector<double> item_weights;
  std::vector<std::vector<int>> sensor_items;
  // Table: value of every listed set.
  std::vector<std::pair<ElementSet, double>> table;
  // Custom: free-form name.
  std::string name;
};

// An objective on the ideal lattice of an n-element poset. A cheap-to-copy
// handle to an immutable evaluator; safe to share across threads.
class Objective {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual double Eval(ElementSet s) const = 0;
  };

  // f = 0 on an empty poset.
  Objective();

  static Objective Modular(std::vector<double> weights);
  // f(X) = total weight of the items covered by sensors in X.
  static Objective Coverage(std::vector<double> item_weights,
                            std::vector<std::vector<int>> sensor_items);
  static Objective ConcaveModular(ConcaveShape shape,
                                  std::vector<double> weights,
                                  double cap = 0.0);
  // Explicit values; evaluating an unlisted set throws kNotAnIdeal.
  static Objective Table(int n,
                         std::vector<std::pair<ElementSet, double>> entries);
  static Objective Custom(int n, std::function<double(ElementSet)> fn,
                          std::string name);

  double operator()(ElementSet s) const { return impl_->Eval(s); }
  double operator()(const Ideal& x) const { return impl_->Eval(x.members()); }

  int size() const { return n_; }
  ObjectiveFamily family() const { return descriptor_->family; }
  const ObjectiveDescriptor& descriptor() const { return *descriptor_; }

  // f_T on the elements listed in `to_parent`: S -> f(T + lift(S)) - f(T).
  Objective Residual(ElementSet base, const std::vector<int>& to_parent) const;
  // Same function after renaming element p to perm[p].
  Objective Relabeled(const std::vector<int>& perm) const;

 private:
  Objective(int n, std::shared_ptr<const Impl> impl,
            std::shared_ptr<const ObjectiveDescriptor> descriptor);

  int n_ = 0;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const ObjectiveDescriptor> descriptor_;
};

// Additive nonnegative cost with a budget.
class CostFunction {
 public:
  // Throws kInvalidArgument on negative or non-finite weights or budget.
  CostFunction(std::string label, std::vector<double> weights, double budget);

  const std::string& label() const { return label_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int p) const { return weights_[p]; }
  double budget() const { return budget_; }
  int size() const { return static_cast<int>(weights_.size()); }

  // Sum of weights over `s`; any subset is allowed.
  double Cost(ElementSet s) const;

  // Costs restricted to `to_parent` with a new budget.
  CostFunction Restricted(const std::vector<int>& to_parent,
                          double budget) const;
  CostFunction Relabeled(const std::vector<int>& perm) const;

 private:
  std::string label_;
  std::vector<double> weights_;
  double budget_;
};

// f(T + S) - f(T). Throws kNotAnIdeal unless T + S is an ideal.
double Marginal(const Objective& f, const Poset& poset, const Ideal& t,
                ElementSet s);

struct ValidationReport {
  bool passed = true;
  // Number of inequalities checked.
  int64_t checked = 0;
  // First violation, when !passed. For DR: x, y, p, q and the two marginals
  // (lhs at x, rhs at y). For monotonicity: x, p, and f(x), f(x + p). For
  // order consistency: p <= q with weights lhs > rhs.
  ElementSet x;
  ElementSet y;
  int p = -1;
  int q = -1;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string message;
};

// Checks f(X + p) - f(X) >= f(Y + q) - f(Y) for ideals X <= Y, p admissible
// for X, q admissible for Y, p <= q. Throws kCapExceeded when the poset has
// more than `cap` ideals.
ValidationReport ValidateDr(const Objective& f, const Poset& poset,
                            int64_t cap);
// Checks f(X + p) >= f(X) over all cover pairs of the ideal lattice.
ValidationReport ValidateMonotone(const Objective& f, const Poset& poset,
                                  int64_t cap);
ValidationReport ValidateOrderConsistent(const CostFunction& c,
                                         const Poset& poset);

enum class DrStatus { kUnchecked, kValidated, kAssumed };

// Poset, objective and knapsack constraints of one problem.
class Instance {
 public:
  Instance() = default;

  // Checks sizes and order consistency of every constraint; throws
  // kInvalidArgument with the first violation.
  static Instance Create(Poset poset, Objective objective,
                         std::vector<CostFunction> constraints);

  const Poset& poset() const { return poset_; }
  const Objective& objective() const { return objective_; }
  const std::vector<CostFunction>& constraints() const { return constraints_; }
  int size() const { return poset_.size(); }

  DrStatus dr_status() const { return dr_status_; }
  void set_dr_status(DrStatus status) { dr_status_ = status; }

  bool Feasible(ElementSet s) const;

 private:
  Poset poset_;
  Objective objective_;
  std::vector<CostFunction> constraints_;
  DrStatus dr_status_ = DrStatus::kUnchecked;
};

struct InstanceValidation {
  std::vector<ValidationReport> order;  // one per constraint
  ValidationReport dr;
  ValidationReport monotone;
  // True when the ideal count exceeded the cap and DR/monotonicity were not
  // checked.
  bool assumed = false;
  bool passed() const;
};

// Runs every validator and records the DR status on `instance`.
InstanceValidation ValidateInstance(Instance& instance, int64_t cap);

}  // namespace latdr

#endif  // LATDR_FUNCTIONS_H_
