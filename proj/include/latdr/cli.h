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

#ifndef LATDR_CLI_H_
#define LATDR_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "latdr/error.h"

namespace latdr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitNoConvergence = 4;

// Process exit status for an error code.
int ExitCodeFor(ErrorCode code);

// Runs the command line `args` (args[0] is the program name) and returns the
// exit status. Subcommands: validate, solve, compare, ulm, gen.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace latdr

#endif  // LATDR_CLI_H_
