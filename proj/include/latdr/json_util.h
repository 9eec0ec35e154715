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

#ifndef LATDR_JSON_UTIL_H_
#define LATDR_JSON_UTIL_H_

#include <string>

#include "json.hpp"

namespace latdr {

using Json = nlohmann::ordered_json;

// %.17g; non-finite values become "null".
std::string FormatDouble(double v);

// Pretty printer that writes every floating-point number with 17 significant
// digits so equal values always give equal bytes.
std::string DumpJson(const Json& j, int indent = 2);

}  // namespace latdr

#endif  // LATDR_JSON_UTIL_H_
