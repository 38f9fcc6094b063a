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

// Community structure and cut detection: modularity optimisation (spectral,
// greedy merging, multilevel), random-walk mixing clusters and map-equation
// flow modules. Every detector returns a Partition whose cutset is the set
// of roads an attacker would occupy.

#ifndef AMBUSH_COMMUNITY_H_
#define AMBUSH_COMMUNITY_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush {

// Community label per node. Labels are contiguous from 0 and numbered in
// order of first appearance by node index.
class Partition {
 public:
  Partition() = default;
  // Relabels `labels` canonically. Any integer labels are accepted.
  explicit Partition(std::vector<int> labels);

  static Partition Single(int num_nodes) {
    return Partition(std::vector<int>(num_nodes, 0));
  }

  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int num_communities() const { return num_communities_; }
  int operator[](NodeIndex v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  std::vector<std::vector<NodeIndex>> Communities() const;

  bool operator==(const Partition& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<int> labels_;
  int num_communities_ = 0;
};

// Newman modularity Q = (1/2m) sum_ij [A_ij - d_i d_j / 2m] delta(c_i, c_j).
double Modularity(const RoadNetwork& net, const Partition& part);

// Roads whose endpoints carry different labels, in edge-index order.
std::vector<EdgeIndex> PartitionCutset(const RoadNetwork& net,
                                       const Partition& part);

// Largest per-community conductance (1 for a single community).
double MaxCommunityConductance(const RoadNetwork& net, const Partition& part);

// Splits on the sign of the leading eigenvector of the modularity matrix
// B = A - d d^T / 2m. A non-positive leading eigenvalue or a single-signed
// eigenvector yields one community (null cutset). Throws ConvergenceError if
// the eigensolver fails.
Partition SpectralBisect(const RoadNetwork& net);

enum class AgglomerativeVariant {
  kGreedy,        // pairwise community merging by best modularity gain
  kHierarchical,  // local moves + supernode coarsening
};

Partition AgglomerativeModularity(const RoadNetwork& net,
                                  AgglomerativeVariant variant);

struct MixingOptions {
  int walk_length = 0;  // 0: ceil(log2 |V|) + 2
  int walks_per_node = 256;
  int min_communities = 2;
  int max_communities = 8;
};

// Row-stochastic short-walk kernel: P_ij = min(1/d_i, 1/d_j) for adjacent
// i, j; the diagonal takes the remaining mass. Dense, row-major n x n.
std::vector<double> MixingKernel(const RoadNetwork& net);

// Samples short walks under MixingKernel from every node, clusters the
// endpoint distributions into 2..8 connected groups, and returns the
// candidate with the smallest maximum community conductance.
Partition MixingPartition(const RoadNetwork& net, const MixingOptions& options,
                          Seed seed);

struct FlowOptions {
  int num_walks = 4;
  int walk_length = 0;  // 0: 100 * |V|
  // Independent optimisation runs over the same visit frequencies.
  int trials = 8;
};

// Node visit frequencies of long simple random walks. Sums to 1.
std::vector<double> VisitFrequencies(const RoadNetwork& net,
                                     const FlowOptions& options, Seed seed);

// Two-level map equation description length (bits) of `part` for a walk
// with the given visit frequencies; exit flow on an edge (a, b) is
// p_a / d_a.
double MapEquation(const RoadNetwork& net, std::span<const double> visits,
                   const Partition& part);

// Greedy pairwise merging of adjacent modules while the map equation drops,
// alternated with single-node moves between neighbouring modules; the best
// of `trials` node orders is kept.
Partition FlowPartition(const RoadNetwork& net, const FlowOptions& options,
                        Seed seed);

void WritePartition(const RoadNetwork& net, const Partition& part,
                    std::ostream& out);

}  // namespace ambush

#endif  // AMBUSH_COMMUNITY_H_
