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

#ifndef AMBUSH_PATHS_H_
#define AMBUSH_PATHS_H_

#include <span>
#include <vector>

#include "ambush/road_network.h"

namespace ambush {

// An src -> dst walk as an ordered edge list. `weight` is the sum of the
// weights used to find it, accumulated in travel order.
struct Path {
  std::vector<EdgeIndex> edges;
  double weight = 0.0;
};

// Minimum-weight path under nonnegative per-edge `weights`.
//
// Among minimum-weight paths the one with the fewest edges wins, and among
// those the lexicographically smallest edge-id sequence. The hop-count step
// keeps zero-weight edges from producing ambiguous (or cyclic) tie chains.
Path ShortestPath(const RoadNetwork& net, NodeIndex src, NodeIndex dst,
                  std::span<const double> weights);

// Single-source minimum weights to every node.
std::vector<double> ShortestDistances(const RoadNetwork& net, NodeIndex src,
                                      std::span<const double> weights);

// Maximum set of pairwise edge-disjoint src -> dst paths (unit-capacity max
// flow, Menger). Paths are loop-free; weights are travel times. Ordered by
// travel time, then by edge-id sequence. Requires src != dst.
std::vector<Path> EdgeDisjointPaths(const RoadNetwork& net, NodeIndex src,
                                    NodeIndex dst);

// |cut(S)| / min(vol(S), vol(V \ S)), vol = sum of degrees. `part` must be a
// nonempty proper subset; duplicates are ignored.
double Conductance(const RoadNetwork& net, std::span<const NodeIndex> part);

// Sum of `weights` over `edges`, in order.
double PathWeight(std::span<const EdgeIndex> edges,
                  std::span<const double> weights);

// Node sequence visited when walking `edges` from `start`; throws DomainError
// if consecutive edges do not connect.
std::vector<NodeIndex> WalkNodes(const RoadNetwork& net, NodeIndex start,
                                 std::span<const EdgeIndex> edges);

}  // namespace ambush

#endif  // AMBUSH_PATHS_H_
