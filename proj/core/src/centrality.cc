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

#include "ambush/centrality.h"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "ambush/errors.h"
#include "ambush/parallel.h"

namespace ambush {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sources per accumulation block. Blocks are reduced in index order, which
// fixes the floating-point summation order for any worker count.
constexpr int kSourcesPerBlock = 8;

struct Accumulator {
  std::vector<double> node;
  std::vector<double> edge;
};

// Brandes single-source dependency accumulation on travel times.
void AccumulateFrom(const RoadNetwork& net, const std::vector<double>& times,
                    NodeIndex s, Accumulator& acc) {
  const int n = net.num_nodes();
  std::vector<double> dist(n, kInf);
  std::vector<double> sigma(n, 0.0);
  std::vector<std::vector<std::pair<NodeIndex, EdgeIndex>>> preds(n);
  std::vector<NodeIndex> order;
  std::vector<char> settled(n, 0);
  order.reserve(n);

  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[s] = 0.0;
  sigma[s] = 1.0;
  queue.emplace(0.0, s);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (settled[v] || d > dist[v]) continue;
    settled[v] = 1;
    order.push_back(v);
    for (const Incidence& inc : net.incident(v)) {
      const NodeIndex w = inc.neighbor;
      if (settled[w]) continue;
      const double cand = d + times[inc.edge];
      if (dist[w] != kInf && PathWeightsTie(cand, dist[w])) {
        sigma[w] += sigma[v];
        preds[w].emplace_back(v, inc.edge);
      } else if (cand < dist[w]) {
        dist[w] = cand;
        sigma[w] = sigma[v];
        preds[w].assign(1, {v, inc.edge});
        queue.emplace(cand, w);
      }
    }
  }

  std::vector<double> delta(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeIndex w = *it;
    for (const auto& [v, e] : preds[w]) {
      const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
      acc.edge[e] += c;
      delta[v] += c;
    }
    if (w != s) acc.node[w] += delta[w];
  }
}

CentralityScores Betweenness(const RoadNetwork& net, int workers) {
  const int n = net.num_nodes();
  const int m = net.num_edges();
  const std::vector<double> times = net.TravelTimes();
  const int blocks = (n + kSourcesPerBlock - 1) / kSourcesPerBlock;
  std::vector<Accumulator> partial(blocks);
  ParallelFor(blocks, workers, [&](int b) {
    Accumulator& acc = partial[b];
    acc.node.assign(n, 0.0);
    acc.edge.assign(m, 0.0);
    const int end = std::min(n, (b + 1) * kSourcesPerBlock);
    for (NodeIndex s = b * kSourcesPerBlock; s < end; ++s) {
      AccumulateFrom(net, times, s, acc);
    }
  });

  CentralityScores scores;
  scores.kind = CentralityKind::kBetweenness;
  scores.node_scores.assign(n, 0.0);
  scores.edge_scores.assign(m, 0.0);
  for (const Accumulator& acc : partial) {
    for (int v = 0; v < n; ++v) scores.node_scores[v] += acc.node[v];
    for (int e = 0; e < m; ++e) scores.edge_scores[e] += acc.edge[e];
  }
  // Every unordered pair was visited from both ends.
  for (double& x : scores.node_scores) x *= 0.5;
  for (double& x : scores.edge_scores) x *= 0.5;
  return scores;
}

std::vector<double> MinOverEndpoints(const RoadNetwork& net,
                                     const std::vector<double>& node_scores) {
  std::vector<double> edge_scores(net.num_edges());
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    edge_scores[e] = std::min(node_scores[edge.u], node_scores[edge.v]);
  }
  return edge_scores;
}

CentralityScores Eigenvector(const RoadNetwork& net,
                             const CentralityOptions& options) {
  const int n = net.num_nodes();
  std::vector<double> x(n, 1.0);
  std::vector<double> next(n);
  auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (NodeIndex v = 0; v < n; ++v) {
      double sum = 0.0;
      for (const Incidence& inc : net.incident(v)) sum += in[inc.neighbor];
      out[v] = sum;
    }
  };

  // Iterating with A + I keeps the dominant eigenvalue strictly dominant on
  // bipartite graphs (grids, trees, even cycles) where A alone oscillates.
  double change = kInf;
  int iter = 0;
  for (; iter < options.eigen_max_iterations; ++iter) {
    multiply(x, next);
    double peak = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      next[v] += x[v];
      peak = std::max(peak, next[v]);
    }
    if (!(peak > 0.0)) break;
    change = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      next[v] /= peak;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < options.eigen_tolerance) break;
  }
  if (!(change < options.eigen_tolerance)) {
    throw ConvergenceError("eigenvector centrality did not converge", change);
  }

  multiply(x, next);
  double num = 0.0;
  double den = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    num += x[v] * next[v];
    den += x[v] * x[v];
  }
  CentralityScores scores;
  scores.kind = CentralityKind::kEigenvector;
  scores.eigenvalue = num / den;
  for (double& c : x) c = std::max(c, 0.0);
  scores.node_scores = std::move(x);
  scores.edge_scores = MinOverEndpoints(net, scores.node_scores);
  return scores;
}

}  // namespace

std::string_view ToString(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::kDegree:
      return "degree";
    case CentralityKind::kBetweenness:
      return "betweenness";
    case CentralityKind::kEigenvector:
      return "eigenvector";
  }
  return "?";
}

std::optional<CentralityKind> ParseCentralityKind(std::string_view name) {
  if (name == "degree") return CentralityKind::kDegree;
  if (name == "betweenness") return CentralityKind::kBetweenness;
  if (name == "eigenvector") return CentralityKind::kEigenvector;
  return std::nullopt;
}

CentralityScores Centrality(const RoadNetwork& net, CentralityKind kind,
                            const CentralityOptions& options) {
  switch (kind) {
    case CentralityKind::kDegree: {
      CentralityScores scores;
      scores.kind = kind;
      scores.node_scores.resize(net.num_nodes());
      for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
        scores.node_scores[v] = net.degree(v);
      }
      scores.edge_scores = MinOverEndpoints(net, scores.node_scores);
      return scores;
    }
    case CentralityKind::kBetweenness:
      return Betweenness(net, options.workers);
    case CentralityKind::kEigenvector:
      return Eigenvector(net, options);
  }
  throw DomainError("unknown centrality kind");
}

}  // namespace ambush
