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

#ifndef LATDR_RNG_H_
#define LATDR_RNG_H_

#include <cstdint>
#include <random>

namespace latdr {

// Seed of stream `stream`, draw `index`, derived from a master seed with a
// SplitMix64 finalizer. Distinct (stream, index) pairs give unrelated seeds.
uint64_t SplitSeed(uint64_t seed, uint64_t stream, uint64_t index);

// Stream ids used by the library so every random consumer is independent.
enum RngStream : uint64_t {
  kStreamSampleIdeal = 1,
  kStreamMonteCarlo = 2,
  kStreamGradient = 3,
  kStreamGreedy = 4,
  kStreamRounding = 5,
  kStreamGenerator = 6,
  kStreamTests = 7,
  kStreamUlmStart = 8,
  kStreamTrials = 9,
};

// Seedable generator; a thin wrapper over std::mt19937_64.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [lo, hi].
  int UniformInt(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  bool Bernoulli(double p) { return Uniform() < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace latdr

#endif  // LATDR_RNG_H_
