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

#include "ambush/attack.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ambush/centrality.h"
#include "ambush/errors.h"

namespace ambush {
namespace {

constexpr double kScoreTieTolerance = 1e-9;

bool ScoresTie(double a, double b) {
  return std::abs(a - b) <=
         kScoreTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

Partition DetectPartition(const RoadNetwork& net, AttackStrategy strategy,
                          Seed seed, const AttackOptions& options) {
  switch (strategy) {
    case AttackStrategy::kInfomap:
      return FlowPartition(net, options.flow, DeriveSeed(seed, "infomap"));
    case AttackStrategy::kBotgrep:
      return MixingPartition(net, options.mixing, DeriveSeed(seed, "botgrep"));
    case AttackStrategy::kGreedyModularity:
      return AgglomerativeModularity(net, AgglomerativeVariant::kGreedy);
    case AttackStrategy::kHierarchicalModularity:
      return AgglomerativeModularity(net, AgglomerativeVariant::kHierarchical);
    case AttackStrategy::kEigenModularity:
      return SpectralBisect(net);
    default:
      throw DomainError("not a partition-based strategy");
  }
}

}  // namespace

std::string_view ToString(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kRandom:
      return "random";
    case AttackStrategy::kDegree:
      return "degree";
    case AttackStrategy::kEigenCentrality:
      return "eigen_c";
    case AttackStrategy::kBetweenness:
      return "betweenness";
    case AttackStrategy::kInfomap:
      return "infomap";
    case AttackStrategy::kBotgrep:
      return "botgrep";
    case AttackStrategy::kGreedyModularity:
      return "greedy_mod";
    case AttackStrategy::kHierarchicalModularity:
      return "hierarchical_mod";
    case AttackStrategy::kEigenModularity:
      return "eigen_mod";
  }
  return "?";
}

std::optional<AttackStrategy> ParseAttackStrategy(std::string_view name) {
  for (AttackStrategy s : kAllAttacks) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

bool IsPartitionBased(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kInfomap:
    case AttackStrategy::kBotgrep:
    case AttackStrategy::kGreedyModularity:
    case AttackStrategy::kHierarchicalModularity:
    case AttackStrategy::kEigenModularity:
      return true;
    default:
      return false;
  }
}

AttackPlan AttackPlan::Prefix(int k) const {
  AttackPlan p = *this;
  p.edges.resize(std::min<std::size_t>(std::max(k, 0), edges.size()));
  return p;
}

std::vector<char> AttackPlan::Mask(int num_edges) const {
  std::vector<char> mask(num_edges, 0);
  for (EdgeIndex e : edges) mask[e] = 1;
  return mask;
}

std::vector<EdgeIndex> RankEdgesDescending(const RoadNetwork& net,
                                           std::span<const double> scores) {
  std::vector<EdgeIndex> order(net.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeIndex a, EdgeIndex b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return net.edge_rank(a) < net.edge_rank(b);
  });
  // Scores that differ only by accumulated rounding form one tie group,
  // ordered by id.
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           ScoresTie(scores[order[start]], scores[order[end]])) {
      ++end;
    }
    std::sort(order.begin() + start, order.begin() + end,
              [&](EdgeIndex a, EdgeIndex b) {
                return net.edge_rank(a) < net.edge_rank(b);
              });
    start = end;
  }
  return order;
}

AttackPlanner::AttackPlanner(const RoadNetwork& net, AttackOptions options)
    : net_(net), options_(options) {
  CentralityOptions copts;
  copts.workers = options_.workers;
  betweenness_ =
      Centrality(net_, CentralityKind::kBetweenness, copts).edge_scores;
  by_betweenness_ = RankEdgesDescending(net_, betweenness_);
}

std::vector<EdgeIndex> AttackPlanner::Ranking(AttackStrategy strategy,
                                              Seed seed) const {
  return Rank(strategy, seed, nullptr);
}

std::vector<EdgeIndex> AttackPlanner::Rank(AttackStrategy strategy, Seed seed,
                                           int* cutset_size) const {
  const int m = net_.num_edges();
  switch (strategy) {
    case AttackStrategy::kRandom: {
      // Partial Fisher-Yates: every prefix is a uniform sample without
      // replacement.
      std::vector<EdgeIndex> order(m);
      std::iota(order.begin(), order.end(), 0);
      Rng rng = MakeRng(DeriveSeed(seed, "random"));
      for (int i = 0; i < m; ++i) {
        const auto j = i + static_cast<int>(UniformIndex(rng, m - i));
        std::swap(order[i], order[j]);
      }
      return order;
    }
    case AttackStrategy::kDegree: {
      std::vector<NodeIndex> nodes(net_.num_nodes());
      std::iota(nodes.begin(), nodes.end(), 0);
      std::sort(nodes.begin(), nodes.end(), [&](NodeIndex a, NodeIndex b) {
        if (net_.degree(a) != net_.degree(b)) {
          return net_.degree(a) > net_.degree(b);
        }
        return net_.node_rank(a) < net_.node_rank(b);
      });
      std::vector<char> taken(m, 0);
      std::vector<EdgeIndex> order;
      order.reserve(m);
      for (NodeIndex v : nodes) {
        for (const Incidence& inc : net_.incident(v)) {
          if (!taken[inc.edge]) {
            taken[inc.edge] = 1;
            order.push_back(inc.edge);
          }
        }
      }
      return order;
    }
    case AttackStrategy::kEigenCentrality: {
      CentralityOptions copts;
      copts.workers = options_.workers;
      const auto scores = Centrality(net_, CentralityKind::kEigenvector, copts);
      return RankEdgesDescending(net_, scores.edge_scores);
    }
    case AttackStrategy::kBetweenness:
      return by_betweenness_;
    default:
      break;
  }

  const Partition part = DetectPartition(net_, strategy, seed, options_);
  std::vector<char> in_cut(m, 0);
  const std::vector<EdgeIndex> cut = PartitionCutset(net_, part);
  for (EdgeIndex e : cut) in_cut[e] = 1;
  if (cutset_size) *cutset_size = static_cast<int>(cut.size());
  std::vector<EdgeIndex> order;
  order.reserve(m);
  for (EdgeIndex e : by_betweenness_) {
    if (in_cut[e]) order.push_back(e);
  }
  for (EdgeIndex e : by_betweenness_) {
    if (!in_cut[e]) order.push_back(e);
  }
  return order;
}

AttackPlan AttackPlanner::Select(AttackStrategy strategy, int k,
                                 Seed seed) const {
  if (k < 1 || k > net_.num_edges()) {
    throw DomainError("attack budget k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(net_.num_edges()) + "]");
  }
  AttackPlan plan;
  plan.strategy = strategy;
  plan.seed = seed;
  plan.edges = Rank(strategy, seed, &plan.cutset_size);
  plan.edges.resize(k);
  return plan;
}

AttackPlan SelectAttackEdges(const RoadNetwork& net, AttackStrategy strategy,
                             int k, Seed seed, const AttackOptions& options) {
  if (k < 1 || k > net.num_edges()) {
    throw DomainError("attack budget k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(net.num_edges()) + "]");
  }
  return AttackPlanner(net, options).Select(strategy, k, seed);
}

}  // namespace ambush
