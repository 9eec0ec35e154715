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

#ifndef LATDR_INSTANCE_IO_H_
#define LATDR_INSTANCE_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "latdr/element_set.h"
#include "latdr/functions.h"
#include "latdr/json_util.h"
#include "latdr/poset.h"

namespace latdr {

inline constexpr int kSchemaVersion = 1;

struct Fixture {
  ElementSet optimum;
  double value = 0.0;
};

// Parsed instance file. The parts are kept separate so order-consistency
// problems can be reported as validation failures rather than parse errors.
struct InstanceFile {
  std::string name;
  std::vector<std::string> elements;
  Poset poset;
  Objective objective;
  std::vector<CostFunction> constraints;
  std::optional<Fixture> fixture;

  // Instance::Create on the parts.
  Instance Build() const;
  int IndexOf(const std::string& element) const;
  // Element names of `s`, in index order.
  std::vector<std::string> Names(ElementSet s) const;
  // Throws kParse on unknown names.
  ElementSet SetOf(const std::vector<std::string>& names) const;
};

// Throws kParse with a line/column or a JSON path on malformed input, and
// the poset's own codes (kCycleDetected, kNotReduced) on bad orders.
InstanceFile ParseInstance(const std::string& text);
InstanceFile LoadInstance(const std::string& path);

// Canonical form: ParseInstance(SerializeInstance(x)) serializes back to the
// same bytes. Throws kInvalidArgument for objectives with no file form.
Json InstanceToJson(const InstanceFile& file);
std::string SerializeInstance(const InstanceFile& file);

// Default names p1..pn.
InstanceFile MakeInstanceFile(const std::string& name, const Instance& inst);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace latdr

#endif  // LATDR_INSTANCE_IO_H_
