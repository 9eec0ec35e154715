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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "latdr/error.h"
#include "latdr/rng.h"
#include "latdr/ulm.h"

namespace latdr {
namespace {

struct Graph {
  int m = 0;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::vector<bool> is_source;
  std::vector<bool> is_sink;
  std::vector<int> topo;
};

Graph MakeGraph(const UlmNetwork& net) {
  Graph g;
  g.m = net.size();
  g.succ.assign(g.m, {});
  g.pred.assign(g.m, {});
  g.is_source.assign(g.m, false);
  g.is_sink.assign(g.m, false);
  for (const auto& [a, b] : net.arcs) {
    g.succ[a].push_back(b);
    g.pred[b].push_back(a);
  }
  for (auto& v : g.succ) std::sort(v.begin(), v.end());
  for (auto& v : g.pred) std::sort(v.begin(), v.end());
  for (int s : net.sources) g.is_source[s] = true;
  for (int t : net.sinks) g.is_sink[t] = true;
  std::vector<int> indegree(g.m, 0);
  for (int i = 0; i < g.m; ++i) indegree[i] = g.pred[i].size();
  std::vector<int> ready;
  for (int i = g.m - 1; i >= 0; --i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    g.topo.push_back(i);
    for (int j : g.succ[i]) {
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (static_cast<int>(g.topo.size()) != g.m) {
    throw Error(ErrorCode::kInvalidArgument, "motion network has a cycle");
  }
  return g;
}

// Longest source-to-node times; `arg` receives the maximizing predecessor.
double LongestPaths(const Graph& g, const std::vector<double>& d,
                    std::vector<double>* finish, std::vector<int>* arg) {
  finish->assign(g.m, 0.0);
  if (arg != nullptr) arg->assign(g.m, -1);
  double best = 0.0;
  for (int i : g.topo) {
    int chosen = -1;
    double start = 0.0;
    for (int p : g.pred[i]) {
      if (chosen < 0 || (*finish)[p] > start) {
        chosen = p;
        start = (*finish)[p];
      }
    }
    (*finish)[i] = start + d[i];
    if (arg != nullptr) (*arg)[i] = chosen;
    if (g.is_sink[i]) best = std::max(best, (*finish)[i]);
  }
  return best;
}

// Series-parallel reduction of the node-split network. Returns per-node flow
// or an empty vector when the network is not series-parallel.
std::vector<double> SeriesParallelFlow(const UlmNetwork& net) {
  struct Edge {
    int tail;
    int head;
    double weight;
    int node;  // leaf node index, or -1
    std::vector<int> children;
    bool series = false;
    bool alive = true;
  };
  const int m = net.size();
  const int kS = 0;
  const int kT = 1;
  auto in_vertex = [](int i) { return 2 + 2 * i; };
  auto out_vertex = [](int i) { return 3 + 2 * i; };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    edges.push_back({in_vertex(i), out_vertex(i), net.weight[i], i, {}});
  }
  for (const auto& [a, b] : net.arcs) {
    edges.push_back({out_vertex(a), in_vertex(b), 0.0, -1, {}});
  }
  for (int s : net.sources) edges.push_back({kS, in_vertex(s), 0.0, -1, {}});
  for (int t : net.sinks) edges.push_back({out_vertex(t), kT, 0.0, -1, {}});
  const int vertices = 2 + 2 * m;

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> first;
    const int count = static_cast<int>(edges.size());
    for (int e = 0; e < count; ++e) {
      if (!edges[e].alive) continue;
      auto key = std::make_pair(edges[e].tail, edges[e].head);
      auto it = first.find(key);
      if (it == first.end()) {
        first[key] = e;
        continue;
      }
      const int f = it->second;
      Edge merged{key.first, key.second, edges[f].weight + edges[e].weight, -1,
                  {f, e}};
      edges[f].alive = false;
      edges[e].alive = false;
      edges.push_back(merged);
      it->second = static_cast<int>(edges.size()) - 1;
      changed = true;
    }
    std::vector<std::vector<int>> in(vertices), out(vertices);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (!edges[e].alive) continue;
      out[edges[e].tail].push_back(e);
      in[edges[e].head].push_back(e);
    }
    for (int v = 2; v < vertices; ++v) {
      if (in[v].size() != 1 || out[v].size() != 1) continue;
      const int a = in[v][0];
      const int b = out[v][0];
      if (!edges[a].alive || !edges[b].alive || a == b) continue;
      Edge merged{edges[a].tail, edges[b].head,
                  edges[a].weight + edges[b].weight, -1, {a, b}, true};
      edges[a].alive = false;
      edges[b].alive = false;
      edges.push_back(merged);
      changed = true;
    }
  }
  int root = -1;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (!edges[e].alive) continue;
    if (root >= 0 || edges[e].tail != kS || edges[e].head != kT) return {};
    root = e;
  }
  if (root < 0) return {};
  std::vector<double> node_flow(m, 0.0);
  std::vector<std::pair<int, double>> stack = {{root, net.demand}};
  while (!stack.empty()) {
    auto [e, flow] = stack.back();
    stack.pop_back();
    const Edge& edge = edges[e];
    if (edge.node >= 0) node_flow[edge.node] = flow;
    if (edge.children.empty()) continue;
    if (edge.series) {
      for (int c : edge.children) stack.emplace_back(c, flow);
    } else {
      const double total = edge.weight;
      const double k = static_cast<double>(edge.children.size());
      for (int c : edge.children) {
        const double share =
            total > 0.0 ? edges[c].weight / total : 1.0 / k;
        stack.emplace_back(c, flow * share);
      }
    }
  }
  return node_flow;
}

using Path = std::vector<int>;

// A source-to-sink path through node `i`, picking neighbors by `choose`.
template <typename Choose>
Path PathThrough(const Graph& g, int i, Choose&& choose) {
  Path back;
  int cur = i;
  while (!g.pred[cur].empty()) {
    cur = choose(g.pred[cur]);
    back.push_back(cur);
  }
  Path path(back.rbegin(), back.rend());
  path.push_back(i);
  cur = i;
  while (!g.succ[cur].empty()) {
    cur = choose(g.succ[cur]);
    path.push_back(cur);
  }
  return path;
}

struct PathFlow {
  Path path;
  double flow;
};

std::vector<PathFlow> InitialPaths(const Graph& g, const UlmNetwork& net,
                                   const FlowOptions& options) {
  std::map<Path, double> paths;
  if (options.start == FlowStart::kPathCover) {
    for (int i = 0; i < g.m; ++i) {
      paths[PathThrough(g, i, [](const std::vector<int>& v) {
        return v.front();
      })] += 1.0;
    }
  } else {
    Rng rng(SplitSeed(options.seed, kStreamUlmStart, 0));
    for (int i = 0; i < g.m; ++i) {
      Path p = PathThrough(g, i, [&rng](const std::vector<int>& v) {
        return v[rng.UniformInt(0, static_cast<int>(v.size()) - 1)];
      });
      paths[p] += 0.25 + rng.Uniform();
    }
  }
  double total = 0.0;
  for (const auto& [p, w] : paths) total += w;
  std::vector<PathFlow> result;
  for (const auto& [p, w] : paths) {
    result.push_back({p, net.demand * w / total});
  }
  return result;
}

// Maximizes sum_A a log(v - delta) + sum_B a log(v + delta) over
// delta in [0, hi]; the derivative is decreasing.
double ExchangeStep(const std::vector<int>& lose, const std::vector<int>& gain,
                    const std::vector<double>& a, const std::vector<double>& v,
                    double hi) {
  auto slope = [&](double delta) {
    double s = 0.0;
    for (int i : lose) s -= a[i] / (v[i] - delta);
    for (int i : gain) s += a[i] / (v[i] + delta);
    return s;
  };
  if (lose.empty()) return hi;
  double lo_bound = 0.0;
  double hi_bound = hi;
  // v[i] - hi may be exactly zero for a node carried by the losing path only.
  bool hi_pole = false;
  for (int i : lose) {
    if (v[i] - hi <= 0.0) hi_pole = true;
  }
  if (!hi_pole && slope(hi) >= 0.0) return hi;
  double delta = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo_bound + hi_bound);
    if (slope(mid) > 0.0) {
      lo_bound = mid;
    } else {
      hi_bound = mid;
    }
    delta = 0.5 * (lo_bound + hi_bound);
    if (hi_bound - lo_bound <= 1e-16 * std::max(1.0, hi)) break;
  }
  return delta;
}

UlmSolution Finish(const Graph& g, const UlmNetwork& net,
                   const std::vector<double>& flow, FlowMethod method,
                   int iterations, double residual) {
  std::vector<double> d(g.m);
  for (int i = 0; i < g.m; ++i) d[i] = net.weight[i] / flow[i];
  std::vector<double> finish;
  const double total = LongestPaths(g, d, &finish, nullptr);
  UlmSolution sol;
  sol.method = method;
  sol.iterations = iterations;
  sol.residual = residual;
  sol.normalization = total;
  sol.speed.resize(g.m);
  sol.start.resize(g.m);
  sol.duration.resize(g.m);
  for (int i = 0; i < g.m; ++i) {
    sol.duration[i] = d[i] / total;
    sol.start[i] = (finish[i] - d[i]) / total;
    sol.speed[i] = flow[i] * total;
  }
  return sol;
}

// Relative spread between the longest path and the shortest path among
// `paths` under node times d.
double PathGap(const Graph& g, const std::vector<double>& d,
               const std::vector<PathFlow>& paths) {
  std::vector<double> finish;
  const double longest = LongestPaths(g, d, &finish, nullptr);
  double shortest = std::numeric_limits<double>::infinity();
  for (const PathFlow& pf : paths) {
    double len = 0.0;
    for (int i : pf.path) len += d[i];
    shortest = std::min(shortest, len);
  }
  return (longest - shortest) / longest;
}

}  // namespace

bool IsSeriesParallel(const UlmNetwork& net) {
  return net.size() > 0 && !SeriesParallelFlow(net).empty();
}

UlmSolution SolveFlow(const UlmNetwork& net, const FlowOptions& options) {
  if (net.size() == 0) {
    throw Error(ErrorCode::kEmptyMotion, "network has no nodes");
  }
  const Graph g = MakeGraph(net);
  if (options.allow_series_parallel) {
    std::vector<double> flow = SeriesParallelFlow(net);
    if (!flow.empty()) {
      std::vector<double> d(g.m);
      for (int i = 0; i < g.m; ++i) d[i] = net.weight[i] / flow[i];
      // Every node carries flow, so every source-to-sink path is positive.
      std::vector<double> finish;
      const double longest = LongestPaths(g, d, &finish, nullptr);
      // Shortest source-to-sink path by forward DP.
      double shortest = std::numeric_limits<double>::infinity();
      std::vector<double> low(g.m, 0.0);
      for (int i : g.topo) {
        double s = g.pred[i].empty() ? 0.0
                                     : std::numeric_limits<double>::infinity();
        for (int p : g.pred[i]) s = std::min(s, low[p]);
        low[i] = s + d[i];
        if (g.is_sink[i]) shortest = std::min(shortest, low[i]);
      }
      return Finish(g, net, flow, FlowMethod::kSeriesParallel, 0,
                    (longest - shortest) / longest);
    }
  }

  const std::vector<double>& a = net.weight;
  std::vector<PathFlow> paths = InitialPaths(g, net, options);
  std::vector<double> v(g.m, 0.0);
  for (const PathFlow& pf : paths) {
    for (int i : pf.path) v[i] += pf.flow;
  }
  std::vector<double> d(g.m);
  std::vector<double> finish;
  std::vector<int> arg;
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    for (int i = 0; i < g.m; ++i) d[i] = a[i] / v[i];
    const double longest = LongestPaths(g, d, &finish, &arg);
    int min_index = -1;
    double shortest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(paths.size()); ++k) {
      double len = 0.0;
      for (int i : paths[k].path) len += d[i];
      if (len < shortest) {
        shortest = len;
        min_index = k;
      }
    }
    gap = (longest - shortest) / longest;
    if (gap <= options.tolerance) break;

    int end = -1;
    for (int i = 0; i < g.m; ++i) {
      if (g.is_sink[i] && (end < 0 || finish[i] > finish[end])) end = i;
    }
    Path longest_path;
    for (int i = end; i >= 0; i = arg[i]) longest_path.push_back(i);
    std::reverse(longest_path.begin(), longest_path.end());

    std::vector<char> in_long(g.m, 0), in_short(g.m, 0);
    for (int i : longest_path) in_long[i] = 1;
    for (int i : paths[min_index].path) in_short[i] = 1;
    std::vector<int> lose, gain;
    for (int i = 0; i < g.m; ++i) {
      if (in_short[i] && !in_long[i]) lose.push_back(i);
      if (in_long[i] && !in_short[i]) gain.push_back(i);
    }
    const double delta =
        ExchangeStep(lose, gain, a, v, paths[min_index].flow);
    for (int i : lose) v[i] -= delta;
    for (int i : gain) v[i] += delta;
    if (delta >= paths[min_index].flow) {
      paths.erase(paths.begin() + min_index);
    } else {
      paths[min_index].flow -= delta;
    }
    auto it = std::find_if(paths.begin(), paths.end(), [&](const PathFlow& p) {
      return p.path == longest_path;
    });
    if (it == paths.end()) {
      paths.push_back({longest_path, delta});
    } else {
      it->flow += delta;
    }
  }
  if (gap > options.tolerance) {
    throw Error(ErrorCode::kNoConvergence,
                "flow solver stopped after " + std::to_string(iter) +
                    " iterations with relative gap " + std::to_string(gap));
  }
  // Recompute node flows from the final paths to remove drift.
  std::fill(v.begin(), v.end(), 0.0);
  for (const PathFlow& pf : paths) {
    for (int i : pf.path) v[i] += pf.flow;
  }
  for (int i = 0; i < g.m; ++i) d[i] = a[i] / v[i];
  return Finish(g, net, v, FlowMethod::kPathEquilibration, iter,
                PathGap(g, d, paths));
}

}  // namespace latdr
