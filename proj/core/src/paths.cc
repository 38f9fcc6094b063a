// Copyright 2026 The Ambush Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ambush/paths.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

#include "ambush/errors.h"

namespace ambush {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
  double dist = kInf;
  int hops = std::numeric_limits<int>::max();
  bool operator<(const Label& o) const {
    return std::tie(dist, hops) < std::tie(o.dist, o.hops);
  }
};

void CheckWeights(const RoadNetwork& net, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != net.num_edges()) {
    throw DomainError("weight vector does not cover every edge");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("edge weights must be nonnegative");
  }
}

void CheckNode(const RoadNetwork& net, NodeIndex n) {
  if (n < 0 || n >= net.num_nodes()) throw DomainError("node out of range");
}

// Dijkstra on (weight, hop count) labels.
std::vector<Label> Labels(const RoadNetwork& net, NodeIndex src,
                          std::span<const double> weights) {
  std::vector<Label> label(net.num_nodes());
  using Item = std::tuple<double, int, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  label[src] = {0.0, 0};
  queue.emplace(0.0, 0, src);
  while (!queue.empty()) {
    auto [d, h, v] = queue.top();
    queue.pop();
    if (Label{d, h} < label[v] || label[v] < Label{d, h}) continue;
    for (const Incidence& inc : net.incident(v)) {
      const Label cand{d + weights[inc.edge], h + 1};
      if (cand < label[inc.neighbor]) {
        label[inc.neighbor] = cand;
        queue.emplace(cand.dist, cand.hops, inc.neighbor);
      }
    }
  }
  return label;
}

}  // namespace

Path ShortestPath(const RoadNetwork& net, NodeIndex src, NodeIndex dst,
                  std::span<const double> weights) {
  CheckNode(net, src);
  CheckNode(net, dst);
  CheckWeights(net, weights);
  Path path;
  if (src == dst) return path;

  // Labels toward dst; then walk forward from src taking, at every node, the
  // smallest-rank edge that stays on an optimal (weight, hops) chain.
  const std::vector<Label> to_dst = Labels(net, dst, weights);
  if (to_dst[src].dist == kInf) throw DomainError("destination unreachable");
  NodeIndex cur = src;
  while (cur != dst) {
    const Label here = to_dst[cur];
    EdgeIndex chosen = kNoEdge;
    NodeIndex next = kNoNode;
    for (const Incidence& inc : net.incident(cur)) {
      const Label& there = to_dst[inc.neighbor];
      if (there.hops + 1 == here.hops &&
          there.dist + weights[inc.edge] == here.dist) {
        chosen = inc.edge;
        next = inc.neighbor;
        break;
      }
    }
    if (chosen == kNoEdge) throw Error("shortest path reconstruction failed");
    path.edges.push_back(chosen);
    path.weight += weights[chosen];
    cur = next;
  }
  return path;
}

std::vector<double> ShortestDistances(const RoadNetwork& net, NodeIndex src,
                                      std::span<const double> weights) {
  CheckNode(net, src);
  CheckWeights(net, weights);
  const std::vector<Label> labels = Labels(net, src, weights);
  std::vector<double> dist(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) dist[i] = labels[i].dist;
  return dist;
}

std::vector<Path> EdgeDisjointPaths(const RoadNetwork& net, NodeIndex src,
                                    NodeIndex dst) {
  CheckNode(net, src);
  CheckNode(net, dst);
  if (src == dst) throw DomainError("disjoint paths need src != dst");

  // flow[e] = +1 when one unit runs u -> v, -1 when it runs v -> u.
  std::vector<int> flow(net.num_edges(), 0);
  auto sent = [&](EdgeIndex e, NodeIndex from) {
    return net.edge(e).u == from ? flow[e] : -flow[e];
  };
  auto push = [&](EdgeIndex e, NodeIndex from) {
    flow[e] += net.edge(e).u == from ? 1 : -1;
  };

  // Edmonds-Karp; BFS in incidence (edge-rank) order for determinism.
  while (true) {
    std::vector<EdgeIndex> via(net.num_nodes(), kNoEdge);
    std::vector<char> seen(net.num_nodes(), 0);
    std::deque<NodeIndex> queue{src};
    seen[src] = 1;
    while (!queue.empty() && !seen[dst]) {
      const NodeIndex v = queue.front();
      queue.pop_front();
      for (const Incidence& inc : net.incident(v)) {
        if (seen[inc.neighbor] || sent(inc.edge, v) >= 1) continue;
        seen[inc.neighbor] = 1;
        via[inc.neighbor] = inc.edge;
        queue.push_back(inc.neighbor);
      }
    }
    if (!seen[dst]) break;
    for (NodeIndex v = dst; v != src;) {
      const NodeIndex prev = net.edge(via[v]).Other(v);
      push(via[v], prev);
      v = prev;
    }
  }

  const std::vector<double> times = net.TravelTimes();
  std::vector<char> used(net.num_edges(), 0);
  std::vector<Path> paths;
  while (true) {
    std::vector<EdgeIndex> walk;
    std::vector<NodeIndex> nodes{src};
    NodeIndex cur = src;
    bool stuck = false;
    while (cur != dst) {
      EdgeIndex next = kNoEdge;
      for (const Incidence& inc : net.incident(cur)) {
        if (!used[inc.edge] && sent(inc.edge, cur) == 1) {
          next = inc.edge;
          break;
        }
      }
      if (next == kNoEdge) {
        stuck = true;
        break;
      }
      used[next] = 1;
      cur = net.edge(next).Other(cur);
      // Drop any loop closed by revisiting a node.
      auto seen_at = std::find(nodes.begin(), nodes.end(), cur);
      if (seen_at != nodes.end()) {
        const auto keep = seen_at - nodes.begin();
        nodes.resize(keep + 1);
        walk.resize(keep);
      } else {
        walk.push_back(next);
        nodes.push_back(cur);
      }
    }
    if (stuck) break;
    Path p;
    p.edges = std::move(walk);
    p.weight = PathWeight(p.edges, times);
    paths.push_back(std::move(p));
  }

  std::sort(paths.begin(), paths.end(), [&](const Path& a, const Path& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return std::lexicographical_compare(
        a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
        [&](EdgeIndex x, EdgeIndex y) {
          return net.edge_rank(x) < net.edge_rank(y);
        });
  });
  return paths;
}

double Conductance(const RoadNetwork& net, std::span<const NodeIndex> part) {
  std::vector<char> inside(net.num_nodes(), 0);
  int members = 0;
  for (NodeIndex v : part) {
    CheckNode(net, v);
    if (!inside[v]) {
      inside[v] = 1;
      ++members;
    }
  }
  if (members == 0 || members == net.num_nodes()) {
    throw DomainError("conductance needs a nonempty proper node subset");
  }
  long long cut = 0;
  long long vol_in = 0;
  long long vol_out = 0;
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    (inside[v] ? vol_in : vol_out) += net.degree(v);
  }
  for (const Edge& e : net.edges()) {
    if (inside[e.u] != inside[e.v]) ++cut;
  }
  const long long vol = std::min(vol_in, vol_out);
  if (vol == 0) return cut == 0 ? 0.0 : 1.0;
  return static_cast<double>(cut) / static_cast<double>(vol);
}

double PathWeight(std::span<const EdgeIndex> edges,
                  std::span<const double> weights) {
  double total = 0.0;
  for (EdgeIndex e : edges) total += weights[e];
  return total;
}

std::vector<NodeIndex> WalkNodes(const RoadNetwork& net, NodeIndex start,
                                 std::span<const EdgeIndex> edges) {
  std::vector<NodeIndex> nodes{start};
  NodeIndex cur = start;
  for (EdgeIndex e : edges) {
    if (e < 0 || e >= net.num_edges()) throw DomainError("edge out of range");
    const Edge& edge = net.edge(e);
    if (edge.u != cur && edge.v != cur) {
      throw DomainError("edge '" + edge.id +
                        "' does not continue the walk at '" + net.node(cur).id +
                        "'");
    }
    cur = edge.Other(cur);
    nodes.push_back(cur);
  }
  return nodes;
}

}  // namespace ambush
