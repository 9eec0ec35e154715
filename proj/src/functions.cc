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

#include "latdr/functions.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "latdr/error.h"

namespace latdr {
namespace {

std::string SetText(ElementSet s) {
  std::string text = "{";
  bool first = true;
  for (int p : s) {
    if (!first) text += ",";
    text += std::to_string(p);
    first = false;
  }
  return text + "}";
}

void CheckWeights(const std::vector<double>& weights, const char* what) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " must be finite and nonnegative");
    }
  }
}

class ModularImpl : public Objective::Impl {
 public:
  explicit ModularImpl(std::vector<double> weights)
      : weights_(std::move(weights)) {}
  double Eval(ElementSet s) const override {
    double total = 0.0;
    for (int p : s) total += weights_[p];
    return total;
  }

 private:
  std::vector<double> weights_;
};

class CoverageImpl : public Objective::Impl {
 public:
  CoverageImpl(const std::vector<double>& item_weights,
               const std::vector<std::vector<int>>& sensor_items)
      : item_weights_(item_weights),
        words_((item_weights.size() + 63) / 64) {
    masks_.assign(sensor_items.size(), std::vector<uint64_t>(words_, 0));
    for (size_t p = 0; p < sensor_items.size(); ++p) {
      for (int item : sensor_items[p]) {
        if (item < 0 || item >= static_cast<int>(item_weights.size())) {
          throw Error(ErrorCode::kInvalidArgument,
                      "sensor " + std::to_string(p) + " lists unknown item " +
                          std::to_string(item));
        }
        masks_[p][item / 64] |= uint64_t{1} << (item % 64);
      }
    }
  }

  double Eval(ElementSet s) const override {
    double total = 0.0;
    for (size_t w = 0; w < words_; ++w) {
      uint64_t covered = 0;
      for (int p : s) covered |= masks_[p][w];
      while (covered != 0) {
        total += item_weights_[w * 64 + std::countr_zero(covered)];
        covered &= covered - 1;
      }
    }
    return total;
  }

 private:
  std::vector<double> item_weights_;
  size_t words_;
  std::vector<std::vector<uint64_t>> masks_;
};

class ConcaveImpl : public Objective::Impl {
 public:
  ConcaveImpl(ConcaveShape shape, std::vector<double> weights, double cap)
      : shape_(shape), weights_(std::move(weights)), cap_(cap) {}
  double Eval(ElementSet s) const override {
    double total = 0.0;
    for (int p : s) total += weights_[p];
    switch (shape_) {
      case ConcaveShape::kSqrt:
        return std::sqrt(total);
      case ConcaveShape::kLog1p:
        return std::log1p(total);
      case ConcaveShape::kMin:
        return std::min(cap_, total);
    }
    return total;
  }

 private:
  ConcaveShape shape_;
  std::vector<double> weights_;
  double cap_;
};

class TableImpl : public Objective::Impl {
 public:
  explicit TableImpl(const std::vector<std::pair<ElementSet, double>>& entries) {
    for (const auto& [s, v] : entries) values_[s.mask()] = v;
  }
  double Eval(ElementSet s) const override {
    auto it = values_.find(s.mask());
    if (it == values_.end()) {
      throw Error(ErrorCode::kNotAnIdeal,
                  "objective table has no entry for " + SetText(s));
    }
    return it->second;
  }

 private:
  std::unordered_map<uint64_t, double> values_;
};

class CustomImpl : public Objective::Impl {
 public:
  explicit CustomImpl(std::function<double(ElementSet)> fn)
      : fn_(std::move(fn)) {}
  double Eval(ElementSet s) const override { return fn_(s); }

 private:
  std::function<double(ElementSet)> fn_;
};

class ResidualImpl : public Objective::Impl {
 public:
  ResidualImpl(Objective parent, ElementSet base, std::vector<int> to_parent)
      : parent_(std::move(parent)),
        base_(base),
        to_parent_(std::move(to_parent)),
        base_value_(parent_(base)) {}
  double Eval(ElementSet s) const override {
    return parent_(base_ | Poset::LiftSet(s, to_parent_)) - base_value_;
  }

 private:
  Objective parent_;
  ElementSet base_;
  std::vector<int> to_parent_;
  double base_value_;
};

class PermutedImpl : public Objective::Impl {
 public:
  PermutedImpl(Objective parent, std::vector<int> perm)
      : parent_(std::move(parent)), inverse_(perm.size()) {
    for (size_t p = 0; p < perm.size(); ++p) inverse_[perm[p]] = p;
  }
  double Eval(ElementSet s) const override {
    return parent_(Poset::LiftSet(s, inverse_));
  }

 private:
  Objective parent_;
  std::vector<int> inverse_;
};

}  // namespace

Objective::Objective()
    : Objective(0, std::make_shared<ModularImpl>(std::vector<double>()),
                std::make_shared<ObjectiveDescriptor>()) {}

Objective::Objective(int n, std::shared_ptr<const Impl> impl,
                     std::shared_ptr<const ObjectiveDescriptor> descriptor)
    : n_(n), impl_(std::move(impl)), descriptor_(std::move(descriptor)) {}

Objective Objective::Modular(std::vector<double> weights) {
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite");
    }
  }
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kModular;
  d->weights = weights;
  const int n = static_cast<int>(weights.size());
  return Objective(n, std::make_shared<ModularImpl>(std::move(weights)), d);
}

Objective Objective::Coverage(std::vector<double> item_weights,
                              std::vector<std::vector<int>> sensor_items) {
  CheckWeights(item_weights, "item weights");
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kCoverage;
  d->item_weights = item_weights;
  d->sensor_items = sensor_items;
  const int n = static_cast<int>(sensor_items.size());
  return Objective(n, std::make_shared<CoverageImpl>(item_weights, sensor_items),
                   d);
}

Objective Objective::ConcaveModular(ConcaveShape shape,
                                    std::vector<double> weights, double cap) {
  CheckWeights(weights, "weights");
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kConcaveModular;
  d->weights = weights;
  d->shape = shape;
  d->cap = cap;
  const int n = static_cast<int>(weights.size());
  return Objective(
      n, std::make_shared<ConcaveImpl>(shape, std::move(weights), cap), d);
}

Objective Objective::Table(int n,
                           std::vector<std::pair<ElementSet, double>> entries) {
  for (const auto& [s, v] : entries) {
    if (!s.IsSubsetOf(ElementSet::FirstN(n)) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "bad table entry " + SetText(s));
    }
  }
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kTable;
  d->table = entries;
  return Objective(n, std::make_shared<TableImpl>(entries), d);
}

Objective Objective::Custom(int n, std::function<double(ElementSet)> fn,
                            std::string name) {
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kCustom;
  d->name = std::move(name);
  return Objective(n, std::make_shared<CustomImpl>(std::move(fn)), d);
}

Objective Objective::Residual(ElementSet base,
                              const std::vector<int>& to_parent) const {
  auto d = std::make_shared<ObjectiveDescriptor>();
  d->family = ObjectiveFamily::kResidual;
  return Objective(static_cast<int>(to_parent.size()),
                   std::make_shared<ResidualImpl>(*this, base, to_parent), d);
}

Objective Objective::Relabeled(const std::vector<int>& perm) const {
  const ObjectiveDescriptor& d = *descriptor_;
  auto permute = [&perm](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (size_t p = 0; p < v.size(); ++p) out[perm[p]] = v[p];
    return out;
  };
  switch (d.family) {
    case ObjectiveFamily::kModular:
      return Modular(permute(d.weights));
    case ObjectiveFamily::kConcaveModular:
      return ConcaveModular(d.shape, permute(d.weights), d.cap);
    case ObjectiveFamily::kCoverage: {
      std::vector<std::vector<int>> sensors(d.sensor_items.size());
      for (size_t p = 0; p < sensors.size(); ++p) {
        sensors[perm[p]] = d.sensor_items[p];
      }
      return Coverage(d.item_weights, std::move(sensors));
    }
    case ObjectiveFamily::kTable: {
      std::vector<std::pair<ElementSet, double>> entries;
      for (const auto& [s, v] : d.table) {
        entries.emplace_back(Poset::LiftSet(s, perm), v);
      }
      return Table(n_, std::move(entries));
    }
    case ObjectiveFamily::kCustom:
    case ObjectiveFamily::kResidual:
      break;
  }
  auto copy = std::make_shared<ObjectiveDescriptor>(d);
  return Objective(n_, std::make_shared<PermutedImpl>(*this, perm), copy);
}

CostFunction::CostFunction(std::string label, std::vector<double> weights,
                           double budget)
    : label_(std::move(label)), weights_(std::move(weights)), budget_(budget) {
  CheckWeights(weights_, "cost weights");
  if (!std::isfinite(budget_) || budget_ < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget of constraint '" + label_ +
                    "' must be finite and nonnegative");
  }
}

double CostFunction::Cost(ElementSet s) const {
  double total = 0.0;
  for (int p : s) total += weights_[p];
  return total;
}

CostFunction CostFunction::Restricted(const std::vector<int>& to_parent,
                                      double budget) const {
  std::vector<double> w;
  w.reserve(to_parent.size());
  for (int p : to_parent) w.push_back(weights_[p]);
  return CostFunction(label_, std::move(w), std::max(0.0, budget));
}

CostFunction CostFunction::Relabeled(const std::vector<int>& perm) const {
  std::vector<double> w(weights_.size());
  for (size_t p = 0; p < w.size(); ++p) w[perm[p]] = weights_[p];
  return CostFunction(label_, std::move(w), budget_);
}

double Marginal(const Objective& f, const Poset& poset, const Ideal& t,
                ElementSet s) {
  const ElementSet joined = t.members() | s;
  if (!poset.IsIdeal(joined)) {
    throw Error(ErrorCode::kNotAnIdeal,
                "T + S = " + SetText(joined) + " is not an ideal");
  }
  return f(joined) - f(t);
}

namespace {

struct LatticeTable {
  std::vector<Ideal> ideals;
  std::vector<double> values;
  std::unordered_map<uint64_t, int> index;
};

LatticeTable Tabulate(const Objective& f, const Poset& poset, int64_t cap) {
  LatticeTable table;
  table.ideals = poset.EnumerateIdeals(cap);
  table.values.reserve(table.ideals.size());
  for (size_t i = 0; i < table.ideals.size(); ++i) {
    table.values.push_back(f(table.ideals[i]));
    table.index[table.ideals[i].members().mask()] = static_cast<int>(i);
  }
  return table;
}

}  // namespace

ValidationReport ValidateDr(const Objective& f, const Poset& poset,
                            int64_t cap) {
  const LatticeTable table = Tabulate(f, poset, cap);
  const int count = static_cast<int>(table.ideals.size());
  const int n = poset.size();
  // gain[i][p]: marginal of admissible p at ideal i, NaN otherwise.
  std::vector<std::vector<double>> gain(
      count, std::vector<double>(n, std::nan("")));
  std::vector<ElementSet> adm(count);
  for (int i = 0; i < count; ++i) {
    adm[i] = poset.Admissible(table.ideals[i]);
    for (int p : adm[i]) {
      ElementSet up = table.ideals[i].members();
      up.Insert(p);
      gain[i][p] = table.values[table.index.at(up.mask())] - table.values[i];
    }
  }
  ValidationReport report;
  for (int i = 0; i < count; ++i) {
    const ElementSet x = table.ideals[i].members();
    for (int j = 0; j < count; ++j) {
      const ElementSet y = table.ideals[j].members();
      if (!x.IsSubsetOf(y)) continue;
      for (int p : adm[i]) {
        for (int q : adm[j] & poset.Up(p)) {
          ++report.checked;
          if (gain[i][p] < gain[j][q] - kValidatorTolerance) {
            report.passed = false;
            report.x = x;
            report.y = y;
            report.p = p;
            report.q = q;
            report.lhs = gain[i][p];
            report.rhs = gain[j][q];
            report.message = "DR violated at X=" + SetText(x) +
                             " Y=" + SetText(y) + " p=" + std::to_string(p) +
                             " q=" + std::to_string(q) + ": " +
                             std::to_string(gain[i][p]) + " < " +
                             std::to_string(gain[j][q]);
            return report;
          }
        }
      }
    }
  }
  return report;
}

ValidationReport ValidateMonotone(const Objective& f, const Poset& poset,
                                  int64_t cap) {
  const LatticeTable table = Tabulate(f, poset, cap);
  ValidationReport report;
  for (size_t i = 0; i < table.ideals.size(); ++i) {
    const ElementSet x = table.ideals[i].members();
    for (int p : poset.Admissible(table.ideals[i])) {
      ElementSet up = x;
      up.Insert(p);
      const double after = table.values[table.index.at(up.mask())];
      ++report.checked;
      if (after < table.values[i] - kValidatorTolerance) {
        report.passed = false;
        report.x = x;
        report.p = p;
        report.lhs = table.values[i];
        report.rhs = after;
        report.message = "monotonicity violated at X=" + SetText(x) +
                         " adding " + std::to_string(p) + ": " +
                         std::to_string(after) + " < " +
                         std::to_string(table.values[i]);
        return report;
      }
    }
  }
  return report;
}

ValidationReport ValidateOrderConsistent(const CostFunction& c,
                                         const Poset& poset) {
  ValidationReport report;
  for (int p = 0; p < poset.size(); ++p) {
    for (int q : poset.UpperCovers(p)) {
      ++report.checked;
      if (c.weight(p) > c.weight(q) + kValidatorTolerance) {
        report.passed = false;
        report.p = p;
        report.q = q;
        report.lhs = c.weight(p);
        report.rhs = c.weight(q);
        report.message = "constraint '" + c.label() + "' not order-consistent: " +
                         std::to_string(p) + " <= " + std::to_string(q) +
                         " but " + std::to_string(c.weight(p)) + " > " +
                         std::to_string(c.weight(q));
        return report;
      }
    }
  }
  return report;
}

Instance Instance::Create(Poset poset, Objective objective,
                          std::vector<CostFunction> constraints) {
  if (objective.size() != poset.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "objective defined on " + std::to_string(objective.size()) +
                    " elements, poset has " + std::to_string(poset.size()));
  }
  for (const CostFunction& c : constraints) {
    if (c.size() != poset.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "constraint '" + c.label() + "' has wrong length");
    }
    ValidationReport r = ValidateOrderConsistent(c, poset);
    if (!r.passed) throw Error(ErrorCode::kInvalidArgument, r.message);
  }
  Instance instance;
  instance.poset_ = std::move(poset);
  instance.objective_ = std::move(objective);
  instance.constraints_ = std::move(constraints);
  return instance;
}

bool Instance::Feasible(ElementSet s) const {
  for (const CostFunction& c : constraints_) {
    if (c.Cost(s) > c.budget() + kValidatorTolerance) return false;
  }
  return true;
}

bool InstanceValidation::passed() const {
  for (const ValidationReport& r : order) {
    if (!r.passed) return false;
  }
  return dr.passed && monotone.passed;
}

InstanceValidation ValidateInstance(Instance& instance, int64_t cap) {
  InstanceValidation result;
  for (const CostFunction& c : instance.constraints()) {
    result.order.push_back(ValidateOrderConsistent(c, instance.poset()));
  }
  if (instance.poset().CountIdeals(cap) < 0) {
    result.assumed = true;
    instance.set_dr_status(DrStatus::kAssumed);
    return result;
  }
  result.dr = ValidateDr(instance.objective(), instance.poset(), cap);
  result.monotone =
      ValidateMonotone(instance.objective(), instance.poset(), cap);
  instance.set_dr_status(result.dr.passed && result.monotone.passed
                             ? DrStatus::kValidated
                             : DrStatus::kUnchecked);
  return result;
}

}  // namespace latdr
