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

#include "latdr/ulm.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "latdr/error.h"

namespace latdr {
namespace {

void RequireMember(const Poset& poset, const ComplexPoint& x,
                   const char* name) {
  if (!IsMember(poset, x.coords())) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " is not in the complex");
  }
}

}  // namespace

UlmNetwork BuildNetwork(const Poset& poset, const ComplexPoint& x,
                        const ComplexPoint& y) {
  RequireMember(poset, x, "start point");
  RequireMember(poset, y, "end point");
  UlmNetwork net;
  std::vector<int> node_of(poset.size(), -1);
  for (int p = 0; p < poset.size(); ++p) {
    const double w = y[p] - x[p];
    if (std::abs(w) <= kSnapTolerance) continue;
    node_of[p] = net.size();
    net.elements.push_back(p);
    net.weight.push_back(std::abs(w));
    net.sign.push_back(w > 0 ? 1 : -1);
    net.demand += std::abs(w);
  }
  if (net.size() == 0) {
    throw Error(ErrorCode::kEmptyMotion, "start and end points coincide");
  }
  std::vector<bool> has_in(net.size(), false), has_out(net.size(), false);
  for (const auto& [p, q] : poset.covers()) {
    const int a = node_of[p];
    const int b = node_of[q];
    if (a < 0 || b < 0) continue;
    if (net.sign[a] != net.sign[b]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "comparable elements move in opposite directions");
    }
    const auto arc = net.sign[a] > 0 ? std::make_pair(a, b)
                                     : std::make_pair(b, a);
    net.arcs.push_back(arc);
    has_out[arc.first] = true;
    has_in[arc.second] = true;
  }
  std::sort(net.arcs.begin(), net.arcs.end());
  for (int i = 0; i < net.size(); ++i) {
    if (!has_in[i]) net.sources.push_back(i);
    if (!has_out[i]) net.sinks.push_back(i);
  }
  return net;
}

UniformLinearMotion UniformLinearMotion::Compute(const Poset& poset,
                                                 const ComplexPoint& x,
                                                 const ComplexPoint& y,
                                                 const FlowOptions& options) {
  UniformLinearMotion motion;
  motion.x_ = x;
  motion.y_ = y;
  try {
    motion.network_ = BuildNetwork(poset, x, y);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyMotion) throw;
    return motion;
  }
  motion.solution_ = SolveFlow(motion.network_, options);
  std::vector<double> events;
  const UlmSolution& s = motion.solution_;
  for (int i = 0; i < motion.network_.size(); ++i) {
    events.push_back(s.start[i]);
    events.push_back(s.start[i] + s.duration[i]);
  }
  std::sort(events.begin(), events.end());
  for (double t : events) {
    if (t <= kMergeTolerance || t >= 1.0 - kMergeTolerance) continue;
    if (!motion.breakpoints_.empty() &&
        t - motion.breakpoints_.back() <= kMergeTolerance) {
      continue;
    }
    motion.breakpoints_.push_back(t);
  }
  return motion;
}

ComplexPoint UniformLinearMotion::Evaluate(double t) const {
  std::vector<double> u = x_.coords();
  const UlmSolution& s = solution_;
  for (int i = 0; i < network_.size(); ++i) {
    const int p = network_.elements[i];
    const double frac =
        std::clamp((t - s.start[i]) / s.duration[i], 0.0, 1.0);
    u[p] = x_[p] + (y_[p] - x_[p]) * frac;
  }
  for (double& v : u) {
    if (v <= kSnapTolerance) v = 0.0;
    if (v >= 1.0 - kSnapTolerance) v = 1.0;
  }
  return ComplexPoint(std::move(u));
}

std::vector<double> UniformLinearMotion::VelocityAt(double t) const {
  std::vector<double> v(x_.size(), 0.0);
  const UlmSolution& s = solution_;
  for (int i = 0; i < network_.size(); ++i) {
    if (s.start[i] < t && t < s.start[i] + s.duration[i]) {
      v[network_.elements[i]] = network_.sign[i] * s.speed[i];
    }
  }
  return v;
}

std::vector<double> UniformLinearMotion::VelocityBefore(double t) const {
  double prev = 0.0;
  for (double b : breakpoints_) {
    if (b < t - kMergeTolerance) prev = b;
  }
  return VelocityAt(0.5 * (prev + t));
}

std::vector<double> UniformLinearMotion::VelocityAfter(double t) const {
  double next = 1.0;
  for (auto it = breakpoints_.rbegin(); it != breakpoints_.rend(); ++it) {
    if (*it > t + kMergeTolerance) next = *it;
  }
  return VelocityAt(0.5 * (t + next));
}

ComplexPoint EvaluateUlm(const Poset& poset, const ComplexPoint& x,
                         const ComplexPoint& y, double t) {
  return UniformLinearMotion::Compute(poset, x, y).Evaluate(t);
}

namespace {

// Edmonds-Karp on a small dense graph with real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : cap_(n, std::vector<double>(n, 0.0)) {}

  void AddArc(int a, int b, double c) { cap_[a][b] += c; }

  double Run(int s, int t, double eps) {
    const int n = static_cast<int>(cap_.size());
    flow_.assign(n, std::vector<double>(n, 0.0));
    double total = 0.0;
    while (true) {
      std::vector<int> parent(n, -1);
      parent[s] = s;
      std::deque<int> queue = {s};
      while (!queue.empty() && parent[t] < 0) {
        const int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v) {
          if (parent[v] < 0 && Residual(u, v) > eps) {
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[t] < 0) break;
      double push = std::numeric_limits<double>::infinity();
      for (int v = t; v != s; v = parent[v]) {
        push = std::min(push, Residual(parent[v], v));
      }
      for (int v = t; v != s; v = parent[v]) {
        const int u = parent[v];
        // Cancel reverse flow first.
        const double cancel = std::min(push, flow_[v][u]);
        flow_[v][u] -= cancel;
        flow_[u][v] += push - cancel;
      }
      total += push;
    }
    return total;
  }

  double Residual(int u, int v) const {
    return cap_[u][v] - flow_[u][v] + flow_[v][u];
  }
  double Flow(int u, int v) const { return flow_[u][v]; }
  // Vertices reachable from s in the residual graph.
  std::vector<bool> Reachable(int s, double eps) const {
    const int n = static_cast<int>(cap_.size());
    std::vector<bool> seen(n, false);
    seen[s] = true;
    std::deque<int> queue = {s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v) {
        if (!seen[v] && Residual(u, v) > eps) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  std::vector<std::vector<double>> cap_;
  std::vector<std::vector<double>> flow_;
};

}  // namespace

FaceCheck CheckFaceTransport(const Poset& poset,
                             const std::vector<double>& before,
                             const std::vector<double>& after, double tol) {
  FaceCheck check;
  check.before = before;
  check.after = after;
  const int n = poset.size();
  // Vertex layout: 0 source, 1 sink, 2+p supply side, 2+n+p demand side.
  const int kSource = 0;
  const int kSink = 1;
  MaxFlow graph(2 + 2 * n);
  double supply = 0.0;
  double demand = 0.0;
  double scale = 0.0;
  for (int p = 0; p < n; ++p) {
    scale = std::max({scale, std::abs(before[p]), std::abs(after[p])});
  }
  const double eps = 1e-14 * std::max(1.0, scale);
  for (int p = 0; p < n; ++p) {
    if (std::abs(before[p]) > eps) {
      graph.AddArc(kSource, 2 + p, std::abs(before[p]));
      supply += std::abs(before[p]);
    }
    if (std::abs(after[p]) > eps) {
      graph.AddArc(2 + n + p, kSink, std::abs(after[p]));
      demand += std::abs(after[p]);
    }
  }
  const double unbounded = 2.0 * (supply + demand) + 1.0;
  for (int p = 0; p < n; ++p) {
    if (std::abs(before[p]) <= eps) continue;
    for (int q = 0; q < n; ++q) {
      if (std::abs(after[q]) <= eps) continue;
      const bool up = before[p] > 0 && after[q] > 0 && poset.Leq(p, q);
      const bool down = before[p] < 0 && after[q] < 0 && poset.Leq(q, p);
      if (up || down) graph.AddArc(2 + p, 2 + n + q, unbounded);
    }
  }
  const double routed = graph.Run(kSource, kSink, eps);
  check.feasible = std::abs(routed - demand) <= tol * std::max(1.0, demand) &&
                   std::abs(supply - demand) <= tol * std::max(1.0, demand);
  if (check.feasible) {
    double residual = 0.0;
    for (int p = 0; p < n; ++p) {
      double out = 0.0;
      double in = 0.0;
      for (int q = 0; q < n; ++q) {
        const double f = graph.Flow(2 + p, 2 + n + q);
        if (f > eps) check.flows.push_back({p, q, f});
        out += graph.Flow(2 + p, 2 + n + q);
        in += graph.Flow(2 + q, 2 + n + p);
      }
      residual = std::max(residual, std::abs(out - std::abs(before[p])));
      residual = std::max(residual, std::abs(in - std::abs(after[p])));
    }
    check.residual = residual;
    return check;
  }
  // Min-cut certificate: demand vertices not reachable from the source can
  // only be fed by supply vertices that are not reachable either, and those
  // carry less than the demand.
  const std::vector<bool> reach = graph.Reachable(kSource, eps);
  double need = 0.0;
  double have = 0.0;
  for (int q = 0; q < n; ++q) {
    if (std::abs(after[q]) > eps && !reach[2 + n + q]) {
      check.deficient.Insert(q);
      need += std::abs(after[q]);
    }
  }
  for (int p = 0; p < n; ++p) {
    if (std::abs(before[p]) <= eps) continue;
    for (int q : check.deficient) {
      const bool up = before[p] > 0 && after[q] > 0 && poset.Leq(p, q);
      const bool down = before[p] < 0 && after[q] < 0 && poset.Leq(q, p);
      if (up || down) {
        check.feeders.Insert(p);
        have += std::abs(before[p]);
        break;
      }
    }
  }
  check.deficit = need - have;
  if (check.deficient.empty()) check.deficit = supply - demand;
  return check;
}

StraightnessReport VerifyStraightness(const Poset& poset,
                                      const UniformLinearMotion& motion,
                                      double tol) {
  StraightnessReport report;
  for (double t : motion.breakpoints()) {
    FaceCheck check = CheckFaceTransport(poset, motion.VelocityBefore(t),
                                         motion.VelocityAfter(t), tol);
    check.t = t;
    report.straight = report.straight && check.feasible;
    report.faces.push_back(std::move(check));
  }
  return report;
}

}  // namespace latdr
