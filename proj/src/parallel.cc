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

#include "latdr/parallel.h"

#include <atomic>
#include <cstdlib>
#include <string>

namespace latdr {
namespace {

std::atomic<int> max_threads{0};

}  // namespace

void SetMaxThreads(int threads) { max_threads = threads < 0 ? 0 : threads; }

int MaxThreads() {
  const int configured = max_threads.load();
  return configured > 0 ? configured : omp_get_max_threads();
}

int ApplyThreadsFromEnvironment() {
  const char* value = std::getenv("LATTICE_DR_MAX_THREADS");
  if (value == nullptr || *value == '\0') return -1;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 0) return -1;
  SetMaxThreads(static_cast<int>(parsed));
  return static_cast<int>(parsed);
}

}  // namespace latdr
