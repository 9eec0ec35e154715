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

#include "latdr/error.h"

namespace latdr {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kCycleDetected:
      return "CycleDetected";
    case ErrorCode::kNotReduced:
      return "NotReduced";
    case ErrorCode::kCapExceeded:
      return "CapExceeded";
    case ErrorCode::kNotAnIdeal:
      return "NotAnIdeal";
    case ErrorCode::kOutOfBox:
      return "OutOfBox";
    case ErrorCode::kEmptyMotion:
      return "EmptyMotion";
    case ErrorCode::kNoConvergence:
      return "NoConvergence";
    case ErrorCode::kNoAdmissibleBelow:
      return "NoAdmissibleBelow";
    case ErrorCode::kParse:
      return "Parse";
    case ErrorCode::kIo:
      return "Io";
  }
  return "Unknown";
}

}  // namespace latdr
