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

#include "latdr/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latdr/error.h"

namespace latdr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LpResult SolveBoundedLp(const std::vector<double>& c,
                        const std::vector<std::vector<double>>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& upper, double tolerance) {
  const int k = static_cast<int>(c.size());
  const int m = static_cast<int>(b.size());
  if (static_cast<int>(upper.size()) != k || static_cast<int>(a.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument, "LP dimension mismatch");
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(a[i].size()) != k || !(b[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "LP row " + std::to_string(i) + " malformed");
    }
  }
  const int total = k + m;
  std::vector<double> ub(total, kInf);
  for (int j = 0; j < k; ++j) ub[j] = std::max(0.0, upper[j]);
  std::vector<std::vector<double>> t(m, std::vector<double>(total, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) t[i][j] = a[i][j];
    t[i][k + i] = 1.0;
  }
  std::vector<double> cost(total, 0.0);
  for (int j = 0; j < k; ++j) cost[j] = c[j];
  std::vector<double> d = cost;  // reduced costs
  std::vector<double> value(total, 0.0);
  std::vector<int> basis(m);
  std::vector<int> row_of(total, -1);
  std::vector<bool> at_upper(total, false);
  for (int i = 0; i < m; ++i) {
    basis[i] = k + i;
    row_of[k + i] = i;
    value[k + i] = b[i];
  }
  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  const double dtol = tolerance * scale;
  const double ptol = 1e-12;

  LpResult result;
  const int max_pivots = 50 * (total + 1) * (total + 1) + 1000;
  while (true) {
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (row_of[j] >= 0) continue;
      if ((!at_upper[j] && d[j] > dtol && ub[j] > 0.0) ||
          (at_upper[j] && d[j] < -dtol)) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++result.pivots > max_pivots) {
      throw Error(ErrorCode::kNoConvergence, "LP pivot limit reached");
    }
    const double dir = at_upper[enter] ? -1.0 : 1.0;
    double theta = ub[enter];
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m; ++i) {
      const double alpha = t[i][enter];
      if (std::abs(alpha) <= ptol) continue;
      const int bv = basis[i];
      // Basic variable changes by -dir * alpha per unit step.
      const double rate = -dir * alpha;
      double limit;
      bool to_upper;
      if (rate < 0.0) {
        limit = std::max(0.0, value[bv]) / -rate;
        to_upper = false;
      } else {
        if (ub[bv] == kInf) continue;
        limit = std::max(0.0, ub[bv] - value[bv]) / rate;
        to_upper = true;
      }
      const bool better = limit < theta - 1e-15;
      const bool tie = leave_row >= 0 && limit <= theta + 1e-15 &&
                       bv < basis[leave_row];
      if (better || tie) {
        theta = std::min(theta, limit);
        leave_row = i;
        leave_to_upper = to_upper;
      }
    }
    if (theta == kInf) {
      throw Error(ErrorCode::kNoConvergence, "LP unbounded");
    }
    value[enter] += dir * theta;
    for (int i = 0; i < m; ++i) {
      value[basis[i]] -= dir * t[i][enter] * theta;
    }
    if (leave_row < 0) {
      at_upper[enter] = !at_upper[enter];
      value[enter] = at_upper[enter] ? ub[enter] : 0.0;
      continue;
    }
    const int leaving = basis[leave_row];
    value[leaving] = leave_to_upper ? ub[leaving] : 0.0;
    at_upper[leaving] = leave_to_upper;
    row_of[leaving] = -1;
    basis[leave_row] = enter;
    row_of[enter] = leave_row;
    at_upper[enter] = false;
    const double pivot = t[leave_row][enter];
    for (double& v : t[leave_row]) v /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave_row) continue;
      const double factor = t[i][enter];
      if (factor == 0.0) continue;
      for (int j = 0; j < total; ++j) t[i][j] -= factor * t[leave_row][j];
    }
    const double factor = d[enter];
    for (int j = 0; j < total; ++j) d[j] -= factor * t[leave_row][j];
  }

  result.x.assign(value.begin(), value.begin() + k);
  for (int j = 0; j < k; ++j) result.x[j] = std::clamp(result.x[j], 0.0, ub[j]);
  result.duals.resize(m);
  for (int i = 0; i < m; ++i) result.duals[i] = -d[k + i];
  // Self-check against the original data.
  double err = 0.0;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) row += a[i][j] * result.x[j];
    const double slack = b[i] - row;
    err = std::max(err, -slack);
    err = std::max(err, -result.duals[i]);
    err = std::max(err, std::abs(result.duals[i] * slack));
  }
  for (int j = 0; j < k; ++j) {
    double reduced = c[j];
    for (int i = 0; i < m; ++i) reduced -= result.duals[i] * a[i][j];
    const bool at_lo = result.x[j] <= ptol;
    const bool at_hi = result.x[j] >= ub[j] - ptol;
    if (at_lo && !at_hi) err = std::max(err, reduced);
    if (at_hi && !at_lo) err = std::max(err, -reduced);
    if (!at_lo && !at_hi) err = std::max(err, std::abs(reduced));
  }
  result.check_error = err;
  double obj = 0.0;
  for (int j = 0; j < k; ++j) obj += c[j] * result.x[j];
  result.objective = obj;
  double bscale = 1.0;
  for (double v : b) bscale = std::max(bscale, v);
  if (err > 1e-7 * scale * bscale) {
    throw Error(ErrorCode::kNoConvergence,
                "LP optimality check failed, error " + std::to_string(err));
  }
  return result;
}

}  // namespace latdr
