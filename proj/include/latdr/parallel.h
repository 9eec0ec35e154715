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

#ifndef LATDR_PARALLEL_H_
#define LATDR_PARALLEL_H_

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

namespace latdr {

// Caps the number of OpenMP threads used by library kernels; 0 restores the
// OpenMP default.
void SetMaxThreads(int threads);
int MaxThreads();
// Applies LATTICE_DR_MAX_THREADS if set. Returns the value applied, or -1.
int ApplyThreadsFromEnvironment();

// Items per block in DeterministicSum. Block sums are combined in block order,
// so the result does not depend on the thread count.
inline constexpr int64_t kSumBlock = 1024;

// Runs body(i) for i in [0, count) on the configured threads. The first
// exception thrown by any iteration (lowest index) is rethrown.
template <typename Body>
void ParallelFor(int64_t count, Body&& body) {
  std::exception_ptr error;
  int64_t error_index = count;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1) num_threads(MaxThreads())
  for (int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

// Sum of term(i) over [0, count), bit-identical for any thread count.
template <typename Term>
double DeterministicSum(int64_t count, Term&& term) {
  const int64_t blocks = (count + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(blocks, 0.0);
  auto block_sum = [&](int64_t b) {
    const int64_t end = std::min(count, (b + 1) * kSumBlock);
    double s = 0.0;
    for (int64_t i = b * kSumBlock; i < end; ++i) s += term(i);
    partial[b] = s;
  };
  if (blocks <= 1) {
    if (blocks == 1) block_sum(0);
  } else {
    ParallelFor(blocks, block_sum);
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace latdr

#endif  // LATDR_PARALLEL_H_
