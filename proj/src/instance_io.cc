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

#include "latdr/instance_io.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "latdr/error.h"

namespace latdr {
namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, "at " + path + ": " + what);
}

const Json& Field(const Json& j, const std::string& path,
                  const std::string& key) {
  if (!j.is_object()) Fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(path, "missing field '" + key + "'");
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

std::string String(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& Array(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

std::vector<double> Numbers(const Json& j, const std::string& path,
                            size_t expected) {
  Array(j, path);
  if (j.size() != expected) {
    Fail(path, "expected " + std::to_string(expected) + " entries, found " +
                   std::to_string(j.size()));
  }
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(Number(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

ElementSet NameList(const InstanceFile& file, const Json& j,
                    const std::string& path) {
  Array(j, path);
  ElementSet s;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const int idx = file.IndexOf(String(j[i], p));
    if (idx < 0) Fail(p, "unknown element '" + j[i].get<std::string>() + "'");
    s.Insert(idx);
  }
  return s;
}

const char* ShapeName(ConcaveShape s) {
  switch (s) {
    case ConcaveShape::kSqrt:
      return "sqrt";
    case ConcaveShape::kLog1p:
      return "log1p";
    case ConcaveShape::kMin:
      return "min";
  }
  return "sqrt";
}

Json DoubleArray(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json NameArray(const InstanceFile& file, ElementSet s) {
  Json a = Json::array();
  for (const std::string& n : file.Names(s)) a.push_back(n);
  return a;
}

Objective ParseObjective(const InstanceFile& file, const Json& j) {
  const std::string path = "/objective";
  const int n = static_cast<int>(file.elements.size());
  const std::string family = String(Field(j, path, "family"), path + "/family");
  if (family == "modular") {
    return Objective::Modular(
        Numbers(Field(j, path, "weights"), path + "/weights", n));
  }
  if (family == "coverage") {
    const Json& items = Field(j, path, "item_weights");
    std::vector<double> w =
        Numbers(items, path + "/item_weights", Array(items, path).size());
    const Json& sensors = Field(j, path, "sensor_items");
    Array(sensors, path + "/sensor_items");
    if (static_cast<int>(sensors.size()) != n) {
      Fail(path + "/sensor_items", "expected one entry per element");
    }
    std::vector<std::vector<int>> lists;
    for (int p = 0; p < n; ++p) {
      const std::string sp = path + "/sensor_items/" + std::to_string(p);
      Array(sensors[p], sp);
      std::vector<int> list;
      for (size_t k = 0; k < sensors[p].size(); ++k) {
        const Json& v = sensors[p][k];
        if (!v.is_number_integer() || v.get<int64_t>() < 0 ||
            v.get<int64_t>() >= static_cast<int64_t>(w.size())) {
          Fail(sp + "/" + std::to_string(k), "expected an item index");
        }
        list.push_back(v.get<int>());
      }
      lists.push_back(std::move(list));
    }
    return Objective::Coverage(std::move(w), std::move(lists));
  }
  if (family == "concave_modular") {
    const std::string shape =
        String(Field(j, path, "shape"), path + "/shape");
    ConcaveShape s;
    if (shape == "sqrt") {
      s = ConcaveShape::kSqrt;
    } else if (shape == "log1p") {
      s = ConcaveShape::kLog1p;
    } else if (shape == "min") {
      s = ConcaveShape::kMin;
    } else {
      Fail(path + "/shape", "unknown shape '" + shape + "'");
    }
    double cap = 0.0;
    if (j.contains("cap")) cap = Number(j["cap"], path + "/cap");
    return Objective::ConcaveModular(
        s, Numbers(Field(j, path, "weights"), path + "/weights", n), cap);
  }
  if (family == "table") {
    const Json& values = Field(j, path, "values");
    Array(values, path + "/values");
    std::vector<std::pair<ElementSet, double>> entries;
    for (size_t i = 0; i < values.size(); ++i) {
      const std::string vp = path + "/values/" + std::to_string(i);
      entries.emplace_back(
          NameList(file, Field(values[i], vp, "ideal"), vp + "/ideal"),
          Number(Field(values[i], vp, "value"), vp + "/value"));
    }
    return Objective::Table(n, std::move(entries));
  }
  Fail(path + "/family", "unknown objective family '" + family + "'");
}

}  // namespace

Instance InstanceFile::Build() const {
  return Instance::Create(poset, objective, constraints);
}

int InstanceFile::IndexOf(const std::string& element) const {
  auto it = std::find(elements.begin(), elements.end(), element);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

std::vector<std::string> InstanceFile::Names(ElementSet s) const {
  std::vector<std::string> out;
  for (int p : s) out.push_back(elements[p]);
  return out;
}

ElementSet InstanceFile::SetOf(const std::vector<std::string>& names) const {
  ElementSet s;
  for (const std::string& n : names) {
    const int idx = IndexOf(n);
    if (idx < 0) throw Error(ErrorCode::kParse, "unknown element '" + n + "'");
    s.Insert(idx);
  }
  return s;
}

InstanceFile ParseInstance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  InstanceFile file;
  const Json& version = Field(j, "", "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    Fail("/schema_version",
         "unsupported schema version, expected " +
             std::to_string(kSchemaVersion));
  }
  if (j.contains("name")) file.name = String(j["name"], "/name");

  const Json& poset = Field(j, "", "poset");
  const Json& elements = Field(poset, "/poset", "elements");
  Array(elements, "/poset/elements");
  for (size_t i = 0; i < elements.size(); ++i) {
    const std::string p = "/poset/elements/" + std::to_string(i);
    std::string name = String(elements[i], p);
    if (name.empty() || file.IndexOf(name) >= 0) {
      Fail(p, "element names must be nonempty and distinct");
    }
    file.elements.push_back(std::move(name));
  }
  if (file.elements.size() > static_cast<size_t>(kMaxElements)) {
    Fail("/poset/elements", "too many elements");
  }
  const int n = static_cast<int>(file.elements.size());
  std::vector<Poset::Cover> covers;
  const Json& cover_list = Field(poset, "/poset", "covers");
  Array(cover_list, "/poset/covers");
  for (size_t i = 0; i < cover_list.size(); ++i) {
    const std::string p = "/poset/covers/" + std::to_string(i);
    const Json& pair = cover_list[i];
    if (!pair.is_array() || pair.size() != 2) Fail(p, "expected a pair");
    const int a = file.IndexOf(String(pair[0], p + "/0"));
    const int b = file.IndexOf(String(pair[1], p + "/1"));
    if (a < 0 || b < 0) Fail(p, "unknown element");
    covers.emplace_back(a, b);
  }
  file.poset = Poset::Build(n, covers);
  file.objective = ParseObjective(file, Field(j, "", "objective"));

  const Json& constraints = Field(j, "", "constraints");
  Array(constraints, "/constraints");
  for (size_t i = 0; i < constraints.size(); ++i) {
    const std::string p = "/constraints/" + std::to_string(i);
    const Json& c = constraints[i];
    std::string label = "c" + std::to_string(i);
    if (c.is_object() && c.contains("label")) {
      label = String(c["label"], p + "/label");
    }
    std::vector<double> w = Numbers(Field(c, p, "weights"), p + "/weights", n);
    const double budget = Number(Field(c, p, "budget"), p + "/budget");
    try {
      file.constraints.emplace_back(label, std::move(w), budget);
    } catch (const Error& e) {
      Fail(p, e.what());
    }
  }
  if (j.contains("fixture")) {
    const Json& fx = j["fixture"];
    Fixture fixture;
    fixture.optimum =
        NameList(file, Field(fx, "/fixture", "optimum"), "/fixture/optimum");
    fixture.value =
        Number(Field(fx, "/fixture", "value"), "/fixture/value");
    file.fixture = fixture;
  }
  return file;
}

InstanceFile LoadInstance(const std::string& path) {
  return ParseInstance(ReadFile(path));
}

Json InstanceToJson(const InstanceFile& file) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = file.name;
  Json poset;
  poset["elements"] = file.elements;
  Json covers = Json::array();
  for (const auto& [a, b] : file.poset.covers()) {
    covers.push_back({file.elements[a], file.elements[b]});
  }
  poset["covers"] = covers;
  j["poset"] = poset;

  const ObjectiveDescriptor& d = file.objective.descriptor();
  Json obj;
  switch (d.family) {
    case ObjectiveFamily::kModular:
      obj["family"] = "modular";
      obj["weights"] = DoubleArray(d.weights);
      break;
    case ObjectiveFamily::kCoverage:
      obj["family"] = "coverage";
      obj["item_weights"] = DoubleArray(d.item_weights);
      obj["sensor_items"] = d.sensor_items;
      break;
    case ObjectiveFamily::kConcaveModular:
      obj["family"] = "concave_modular";
      obj["shape"] = ShapeName(d.shape);
      obj["weights"] = DoubleArray(d.weights);
      obj["cap"] = d.cap;
      break;
    case ObjectiveFamily::kTable: {
      obj["family"] = "table";
      std::vector<std::pair<ElementSet, double>> rows = d.table;
      std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.first.size() != b.first.size()
                   ? a.first.size() < b.first.size()
                   : a.first.mask() < b.first.mask();
      });
      Json values = Json::array();
      for (const auto& [s, v] : rows) {
        Json row;
        row["ideal"] = NameArray(file, s);
        row["value"] = v;
        values.push_back(row);
      }
      obj["values"] = values;
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "objective '" + d.name + "' has no file form");
  }
  j["objective"] = obj;

  Json constraints = Json::array();
  for (const CostFunction& c : file.constraints) {
    Json cj;
    cj["label"] = c.label();
    cj["weights"] = DoubleArray(c.weights());
    cj["budget"] = c.budget();
    constraints.push_back(cj);
  }
  j["constraints"] = constraints;
  if (file.fixture) {
    Json fx;
    fx["optimum"] = NameArray(file, file.fixture->optimum);
    fx["value"] = file.fixture->value;
    j["fixture"] = fx;
  }
  return j;
}

std::string SerializeInstance(const InstanceFile& file) {
  return DumpJson(InstanceToJson(file));
}

InstanceFile MakeInstanceFile(const std::string& name, const Instance& inst) {
  InstanceFile file;
  file.name = name;
  for (int p = 0; p < inst.size(); ++p) {
    file.elements.push_back("p" + std::to_string(p + 1));
  }
  file.poset = inst.poset();
  file.objective = inst.objective();
  file.constraints = inst.constraints();
  return file;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace latdr
