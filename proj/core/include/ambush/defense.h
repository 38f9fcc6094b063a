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

#ifndef AMBUSH_DEFENSE_H_
#define AMBUSH_DEFENSE_H_

#include <array>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush {

enum class DefenseStrategy {
  kShortest,
  kRandomWalk,
  kDisjoint,
  kInverse,
  kMixnet,
};

inline constexpr std::array<DefenseStrategy, 5> kAllDefenses = {
    DefenseStrategy::kShortest, DefenseStrategy::kRandomWalk,
    DefenseStrategy::kDisjoint, DefenseStrategy::kInverse,
    DefenseStrategy::kMixnet,
};

// shortest, random_walk, disjoint, inverse, mixnet.
std::string_view ToString(DefenseStrategy s);
std::optional<DefenseStrategy> ParseDefenseStrategy(std::string_view name);

// Travel between consecutive tour nodes. `edges` is walked starting at
// `from`; it ends at `to` unless the leg failed.
struct Leg {
  NodeIndex from = kNoNode;
  NodeIndex to = kNoNode;
  std::vector<EdgeIndex> edges;
};

struct RoutePlan {
  DefenseStrategy strategy = DefenseStrategy::kShortest;
  std::string courier_id;
  std::vector<Leg> legs;
  Seed seed = 0;
  // Set when a random walk hit its step cap; legs after `failed_leg` are
  // absent and the courier never completes them.
  bool failed = false;
  int failed_leg = -1;
};

// Per-edge inverse-centrality weight. For an edge seen from endpoint j,
//   s_j = (D * B * E) / (D + B + E),  D = deg(j)/|E|, B = betweenness(j),
//   E = eigenvector centrality(j),
// and the edge takes min(s_u, s_v). A zero denominator scores 0.
std::vector<double> InverseCentralityScores(const RoadNetwork& net,
                                            int workers = 1);

// Routes job cards over one network. Travel times are cached; inverse scores
// are computed on first use. Safe for concurrent Plan() calls.
class RoutePlanner {
 public:
  explicit RoutePlanner(const RoadNetwork& net);

  // Throws DomainError if a card names a node missing from the network.
  RoutePlan Plan(const JobCard& card, DefenseStrategy strategy,
                 Seed seed) const;

  const RoadNetwork& network() const { return net_; }
  const std::vector<double>& travel_times() const { return travel_times_; }
  const std::vector<double>& inverse_scores() const;

  // Step cap for one random-walk leg: 50 * |V|.
  long long random_walk_cap() const { return 50LL * net_.num_nodes(); }

 private:
  Leg PlanLeg(NodeIndex from, NodeIndex to, DefenseStrategy strategy,
              std::span<const double> mixnet_scores, Rng& rng) const;

  const RoadNetwork& net_;
  std::vector<double> travel_times_;
  mutable std::once_flag inverse_once_;
  mutable std::vector<double> inverse_scores_;
};

// Convenience wrapper around RoutePlanner. For mixnet, `seed` is the
// courier's per-round sub-stream: every call draws fresh edge scores.
RoutePlan PlanRoute(const RoadNetwork& net, const JobCard& card,
                    DefenseStrategy strategy, Seed seed);

// Route export: `courier_id,leg_index,edge_id,order`.
void WriteRoutes(const RoadNetwork& net, std::span<const RoutePlan> routes,
                 std::ostream& out);
// Rebuilds plans for `fleet` from a route export (replay). Legs absent from
// the file are empty; a leg that does not reach its stop marks the route
// failed there. Throws ParseError/DomainError on inconsistent input.
std::vector<RoutePlan> ReadRoutes(const RoadNetwork& net,
                                  std::span<const JobCard> fleet,
                                  std::istream& in,
                                  const std::string& name = "routes");

}  // namespace ambush

#endif  // AMBUSH_DEFENSE_H_
