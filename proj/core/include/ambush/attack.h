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

#ifndef AMBUSH_ATTACK_H_
#define AMBUSH_ATTACK_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/community.h"
#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush {

enum class AttackStrategy {
  kRandom,
  kDegree,
  kEigenCentrality,
  kBetweenness,
  kInfomap,
  kBotgrep,
  kGreedyModularity,
  kHierarchicalModularity,
  kEigenModularity,
};

inline constexpr std::array<AttackStrategy, 9> kAllAttacks = {
    AttackStrategy::kRandom,           AttackStrategy::kDegree,
    AttackStrategy::kEigenCentrality,  AttackStrategy::kBetweenness,
    AttackStrategy::kInfomap,          AttackStrategy::kBotgrep,
    AttackStrategy::kGreedyModularity, AttackStrategy::kHierarchicalModularity,
    AttackStrategy::kEigenModularity,
};

// Names used in files and on the command line: random, degree, eigen_c,
// betweenness, infomap, botgrep, greedy_mod, hierarchical_mod, eigen_mod.
std::string_view ToString(AttackStrategy s);
std::optional<AttackStrategy> ParseAttackStrategy(std::string_view name);

// True for strategies that occupy the cutset of a detected partition.
bool IsPartitionBased(AttackStrategy s);

// Roads occupied by attack units for one round. `edges` is in selection
// order: a prefix of length j is the plan the same strategy picks for k = j.
struct AttackPlan {
  AttackStrategy strategy = AttackStrategy::kRandom;
  std::vector<EdgeIndex> edges;
  Seed seed = 0;
  // Size of the natural cutset before truncation or padding (partition
  // strategies only; 0 otherwise).
  int cutset_size = 0;

  // First `k` edges as a plan of its own.
  AttackPlan Prefix(int k) const;
  // Per-edge membership mask.
  std::vector<char> Mask(int num_edges) const;
};

struct AttackOptions {
  MixingOptions mixing;
  FlowOptions flow;
  int workers = 1;
};

// Picks exactly k distinct roads. Deterministic per (net, strategy, k, seed).
// Throws DomainError unless 1 <= k <= |E|.
AttackPlan SelectAttackEdges(const RoadNetwork& net, AttackStrategy strategy,
                             int k, Seed seed,
                             const AttackOptions& options = {});

// Reuses expensive per-network rankings across many plans. Thread-safe after
// construction.
class AttackPlanner {
 public:
  explicit AttackPlanner(const RoadNetwork& net, AttackOptions options = {});

  AttackPlan Select(AttackStrategy strategy, int k, Seed seed) const;

  // Full selection order for a topology-based strategy (all |E| roads);
  // `seed` only matters for the random-walk detectors and `random`.
  std::vector<EdgeIndex> Ranking(AttackStrategy strategy, Seed seed) const;

  const std::vector<double>& edge_betweenness() const { return betweenness_; }

 private:
  std::vector<EdgeIndex> Rank(AttackStrategy strategy, Seed seed,
                              int* cutset_size) const;

  const RoadNetwork& net_;
  AttackOptions options_;
  std::vector<double> betweenness_;
  // Roads ordered by edge betweenness, highest first.
  std::vector<EdgeIndex> by_betweenness_;
};

// Orders edges by descending score, breaking ties (scores equal to 1e-9
// relative) by ascending edge id.
std::vector<EdgeIndex> RankEdgesDescending(const RoadNetwork& net,
                                           std::span<const double> scores);

}  // namespace ambush

#endif  // AMBUSH_ATTACK_H_
