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

#include "latdr/multilinear.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "latdr/error.h"
#include "latdr/generate.h"
#include "latdr/parallel.h"
#include "latdr/rng.h"
#include "latdr/ulm.h"

namespace latdr {
namespace {

constexpr int64_t kSampleBlock = 256;

void CheckCap(int k, int64_t cap) {
  if (k >= 62 || (int64_t{1} << k) > cap) {
    throw Error(ErrorCode::kCapExceeded,
                "2^" + std::to_string(k) + " subsets exceed cap " +
                    std::to_string(cap));
  }
}

// sum over S subset of frac of weight(S) * term(base + S).
template <typename Term>
double SubsetExpectation(ElementSet base, const std::vector<int>& frac,
                         const std::vector<double>& prob, int64_t cap,
                         Term&& term) {
  const int k = static_cast<int>(frac.size());
  CheckCap(k, cap);
  return DeterministicSum(int64_t{1} << k, [&](int64_t s) {
    double w = 1.0;
    ElementSet set = base;
    for (int j = 0; j < k; ++j) {
      if ((s >> j) & 1) {
        w *= prob[j];
        set.Insert(frac[j]);
      } else {
        w *= 1.0 - prob[j];
      }
    }
    return w * term(set);
  });
}

void SplitCoordinates(const ComplexPoint& x, int skip, ElementSet* base,
                      std::vector<int>* frac, std::vector<double>* prob) {
  *base = Ones(x);
  for (int p : Fractional(x)) {
    if (p == skip) continue;
    frac->push_back(p);
    prob->push_back(x[p]);
  }
  if (skip >= 0) base->Erase(skip);
}

ElementSet DrawSet(const ComplexPoint& x, uint64_t seed) {
  Rng rng(seed);
  ElementSet s;
  for (int p = 0; p < x.size(); ++p) {
    if (rng.Uniform() < x[p]) s.Insert(p);
  }
  return s;
}

}  // namespace

double EvalExact(const Objective& f, const ComplexPoint& x, int64_t cap) {
  ElementSet base;
  std::vector<int> frac;
  std::vector<double> prob;
  SplitCoordinates(x, -1, &base, &frac, &prob);
  return SubsetExpectation(base, frac, prob, cap,
                           [&f](ElementSet s) { return f(s); });
}

double EvalExactSerial(const Objective& f, const Poset& poset,
                       const ComplexPoint& x, int64_t cap) {
  double total = 0.0;
  for (const Ideal& ideal : poset.EnumerateIdeals(cap)) {
    double w = 1.0;
    for (int p = 0; p < poset.size(); ++p) {
      w *= ideal.Contains(p) ? x[p] : 1.0 - x[p];
    }
    if (w != 0.0) total += w * f(ideal);
  }
  return total;
}

Ideal SampleIdeal(const Poset& poset, const ComplexPoint& x, uint64_t seed) {
  return poset.MakeIdeal(DrawSet(x, seed));
}

Estimate EvalMonteCarlo(const Objective& f, const Poset& poset,
                        const ComplexPoint& x, int64_t samples,
                        uint64_t seed) {
  if (samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  }
  std::vector<double> values(samples);
  const int64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  ParallelFor(blocks, [&](int64_t b) {
    const int64_t end = std::min(samples, (b + 1) * kSampleBlock);
    for (int64_t i = b * kSampleBlock; i < end; ++i) {
      values[i] = f(SampleIdeal(
          poset, x, SplitSeed(seed, kStreamMonteCarlo, static_cast<uint64_t>(i))));
    }
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / samples;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  Estimate e;
  e.value = mean;
  e.samples = samples;
  e.seed = seed;
  e.half_width =
      samples > 1 ? kConfidenceZ * std::sqrt(sq / (samples - 1) / samples)
                  : 0.0;
  return e;
}

bool ForwardDefined(const Poset& poset, const ComplexPoint& x, int p) {
  return !Ones(x).Contains(p) && poset.LowerCovers(p).IsSubsetOf(Ones(x));
}

bool BackwardDefined(const Poset& poset, const ComplexPoint& x, int p) {
  return Support(x).Contains(p) && !poset.UpperCovers(p).Intersects(Support(x));
}

double ExactPartial(const Objective& f, const ComplexPoint& x, int p,
                    int64_t cap) {
  ElementSet base;
  std::vector<int> frac;
  std::vector<double> prob;
  SplitCoordinates(x, p, &base, &frac, &prob);
  const ElementSet with_p = ElementSet::Single(p);
  return SubsetExpectation(base, frac, prob, cap, [&](ElementSet s) {
    return f(s | with_p) - f(s);
  });
}

namespace {

GradientVector Kinds(const Poset& poset, const ComplexPoint& x) {
  GradientVector g;
  g.values.assign(poset.size(), 0.0);
  g.kinds.assign(poset.size(), PartialKind::kZero);
  for (int p = 0; p < poset.size(); ++p) {
    if (ForwardDefined(poset, x, p)) {
      g.kinds[p] = PartialKind::kForward;
    } else if (BackwardDefined(poset, x, p)) {
      g.kinds[p] = PartialKind::kBackward;
    }
  }
  return g;
}

}  // namespace

GradientVector Gradient(const Objective& f, const Poset& poset,
                        const ComplexPoint& x, const GradientOptions& options) {
  GradientVector g = Kinds(poset, x);
  bool exact = options.mode == GradientMode::kExact;
  if (options.mode == GradientMode::kAuto) {
    exact = Fractional(x).size() <= options.exact_dimension;
  }
  if (exact) {
    for (int p = 0; p < poset.size(); ++p) {
      if (g.kinds[p] != PartialKind::kZero) {
        g.values[p] = ExactPartial(f, x, p, kDefaultIdealCap);
      }
    }
    return g;
  }
  const int n = poset.size();
  const int64_t samples = std::max<int64_t>(1, options.samples);
  const int64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
  ParallelFor(blocks, [&](int64_t b) {
    const int64_t end = std::min(samples, (b + 1) * kSampleBlock);
    for (int64_t i = b * kSampleBlock; i < end; ++i) {
      const ElementSet s = DrawSet(
          x, SplitSeed(options.seed, kStreamGradient, static_cast<uint64_t>(i)));
      for (int p = 0; p < n; ++p) {
        if (g.kinds[p] == PartialKind::kZero) continue;
        const ElementSet single = ElementSet::Single(p);
        partial[b][p] += f(s | single) - f(s - single);
      }
    }
  });
  for (int p = 0; p < n; ++p) {
    if (g.kinds[p] == PartialKind::kZero) continue;
    double total = 0.0;
    for (int64_t b = 0; b < blocks; ++b) total += partial[b][p];
    g.values[p] = total / samples;
  }
  return g;
}

GradientVector GradientSerial(const Objective& f, const Poset& poset,
                              const ComplexPoint& x) {
  GradientVector g = Kinds(poset, x);
  const std::vector<Ideal> ideals = poset.EnumerateIdeals(kDefaultIdealCap);
  for (int p = 0; p < poset.size(); ++p) {
    if (g.kinds[p] == PartialKind::kZero) continue;
    double total = 0.0;
    for (const Ideal& ideal : ideals) {
      if (ideal.Contains(p)) continue;
      ElementSet up = ideal.members();
      up.Insert(p);
      if (!poset.IsIdeal(up)) continue;
      double w = 1.0;
      for (int q = 0; q < poset.size(); ++q) {
        if (q != p) w *= ideal.Contains(q) ? x[q] : 1.0 - x[q];
      }
      if (w != 0.0) total += w * (f(up) - f(ideal));
    }
    g.values[p] = total;
  }
  return g;
}

DrGradientReport CheckDrGradient(const Objective& f, const Poset& poset,
                                 int trials, uint64_t seed, double tol) {
  DrGradientReport report;
  if (poset.size() == 0) return report;
  Rng rng(SplitSeed(seed, kStreamTests, 0));
  int attempts = 0;
  while (report.checked < trials && attempts < 1000 * trials + 1000) {
    ++attempts;
    const ComplexPoint y = RandomPoint(poset, rng);
    const ComplexPoint x = Meet(y, RandomPoint(poset, rng));
    std::vector<std::pair<int, int>> pairs;
    for (int q = 0; q < poset.size(); ++q) {
      if (!ForwardDefined(poset, y, q) && !BackwardDefined(poset, y, q)) {
        continue;
      }
      for (int p : poset.Down(q)) {
        if (ForwardDefined(poset, x, p) || BackwardDefined(poset, x, p)) {
          pairs.emplace_back(p, q);
        }
      }
    }
    if (pairs.empty()) continue;
    const auto [p, q] =
        pairs[rng.UniformInt(0, static_cast<int>(pairs.size()) - 1)];
    ++report.checked;
    const double lhs = ExactPartial(f, x, p);
    const double rhs = ExactPartial(f, y, q);
    const int left_sides = ForwardDefined(poset, x, p) +
                           BackwardDefined(poset, x, p);
    const int right_sides = ForwardDefined(poset, y, q) +
                            BackwardDefined(poset, y, q);
    report.inequalities += left_sides * right_sides;
    if (lhs < rhs - tol && report.passed) {
      report.passed = false;
      report.x = x;
      report.y = y;
      report.p = p;
      report.q = q;
      report.lhs = lhs;
      report.rhs = rhs;
    }
  }
  return report;
}

ConcavityReport CheckConcavityAlongUlm(const Objective& f, const Poset& poset,
                                       const ComplexPoint& x,
                                       const ComplexPoint& y, int grid,
                                       double tol) {
  const UniformLinearMotion motion = UniformLinearMotion::Compute(poset, x, y);
  ConcavityReport report;
  std::vector<double> ts;
  for (int i = 0; i <= grid; ++i) ts.push_back(static_cast<double>(i) / grid);
  for (double b : motion.breakpoints()) ts.push_back(b);
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    if (!report.times.empty() &&
        t - report.times.back() <= UniformLinearMotion::kMergeTolerance) {
      continue;
    }
    report.times.push_back(t);
    report.values.push_back(EvalExact(f, motion.Evaluate(t)));
  }
  const auto [lo, hi] =
      std::minmax_element(report.values.begin(), report.values.end());
  report.range = *hi - *lo;
  const double scale = report.range > 0.0 ? report.range : 1.0;
  double magnitude = 0.0;
  for (double v : report.values) magnitude = std::max(magnitude, std::abs(v));
  const double slack = tol * report.range + 1e-12 * std::max(1.0, magnitude);
  const std::vector<double>& t = report.times;
  const std::vector<double>& h = report.values;
  for (size_t i = 1; i + 1 < t.size(); ++i) {
    const double chord =
        h[i - 1] + (h[i + 1] - h[i - 1]) * (t[i] - t[i - 1]) / (t[i + 1] - t[i - 1]);
    const double excess = chord - h[i];
    report.worst_chord = std::max(report.worst_chord, excess / scale);
    if (excess > slack) report.concave = false;
  }
  for (double b : motion.breakpoints()) {
    const ComplexPoint u = motion.Evaluate(b);
    const std::vector<double> before = motion.VelocityBefore(b);
    const std::vector<double> after = motion.VelocityAfter(b);
    double left = 0.0;
    double right = 0.0;
    for (int p = 0; p < poset.size(); ++p) {
      if (before[p] == 0.0 && after[p] == 0.0) continue;
      const double d = ExactPartial(f, u, p);
      left += before[p] * d;
      right += after[p] * d;
    }
    ++report.faces;
    const double gap = right - left;
    report.worst_face = std::max(report.worst_face, gap);
    if (gap > tol * std::max(1.0, std::abs(left))) report.faces_ok = false;
  }
  return report;
}

}  // namespace latdr
