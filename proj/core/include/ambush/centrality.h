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

#ifndef AMBUSH_CENTRALITY_H_
#define AMBUSH_CENTRALITY_H_

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "ambush/road_network.h"

namespace ambush {

enum class CentralityKind { kDegree, kBetweenness, kEigenvector };

std::string_view ToString(CentralityKind kind);
std::optional<CentralityKind> ParseCentralityKind(std::string_view name);

// Node and edge scores, indexed by NodeIndex / EdgeIndex.
//
//   degree       node: number of incident roads; edge: min over endpoints.
//   betweenness  node and edge: sum over unordered pairs {s, t} of the
//                fraction of minimum travel-time s-t paths through the
//                element (endpoints excluded for nodes); equal-cost paths
//                share evenly.
//   eigenvector  node: leading eigenvector of the adjacency matrix scaled to
//                unit maximum; edge: min over endpoints. `eigenvalue` holds
//                the matching eigenvalue.
struct CentralityScores {
  CentralityKind kind = CentralityKind::kDegree;
  std::vector<double> node_scores;
  std::vector<double> edge_scores;
  double eigenvalue = 0.0;
};

struct CentralityOptions {
  double eigen_tolerance = 1e-10;
  int eigen_max_iterations = 10000;
  // Threads used for per-source betweenness accumulation. The reduction
  // order is fixed, so results do not depend on this.
  int workers = 1;
};

// Throws ConvergenceError if power iteration does not settle.
CentralityScores Centrality(const RoadNetwork& net, CentralityKind kind,
                            const CentralityOptions& options = {});

// Two path weights closer than this (relative) count as tied.
inline constexpr double kPathTieTolerance = 1e-9;

inline bool PathWeightsTie(double a, double b) {
  const double scale = std::max({1.0, a < 0 ? -a : a, b < 0 ? -b : b});
  const double diff = a - b;
  return (diff < 0 ? -diff : diff) <= kPathTieTolerance * scale;
}

}  // namespace ambush

#endif  // AMBUSH_CENTRALITY_H_
