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

#include "ambush/defense.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "ambush/centrality.h"
#include "ambush/errors.h"
#include "ambush/io.h"
#include "ambush/paths.h"

namespace ambush {

std::string_view ToString(DefenseStrategy s) {
  switch (s) {
    case DefenseStrategy::kShortest:
      return "shortest";
    case DefenseStrategy::kRandomWalk:
      return "random_walk";
    case DefenseStrategy::kDisjoint:
      return "disjoint";
    case DefenseStrategy::kInverse:
      return "inverse";
    case DefenseStrategy::kMixnet:
      return "mixnet";
  }
  return "?";
}

std::optional<DefenseStrategy> ParseDefenseStrategy(std::string_view name) {
  for (DefenseStrategy s : kAllDefenses) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> InverseCentralityScores(const RoadNetwork& net,
                                            int workers) {
  CentralityOptions options;
  options.workers = workers;
  const auto between = Centrality(net, CentralityKind::kBetweenness, options);
  const auto eigen = Centrality(net, CentralityKind::kEigenvector, options);
  const double m = net.num_edges();

  auto endpoint_score = [&](NodeIndex j) {
    const double d = net.degree(j) / m;
    const double b = between.node_scores[j];
    const double e = eigen.node_scores[j];
    const double sum = d + b + e;
    return sum > 0.0 ? d * b * e / sum : 0.0;
  };
  std::vector<double> scores(net.num_edges());
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edge(e);
    scores[e] = std::min(endpoint_score(edge.u), endpoint_score(edge.v));
  }
  return scores;
}

RoutePlanner::RoutePlanner(const RoadNetwork& net)
    : net_(net), travel_times_(net.TravelTimes()) {}

const std::vector<double>& RoutePlanner::inverse_scores() const {
  std::call_once(inverse_once_,
                 [this] { inverse_scores_ = InverseCentralityScores(net_); });
  return inverse_scores_;
}

Leg RoutePlanner::PlanLeg(NodeIndex from, NodeIndex to,
                          DefenseStrategy strategy,
                          std::span<const double> mixnet_scores,
                          Rng& rng) const {
  Leg leg{from, to, {}};
  if (from == to) return leg;
  switch (strategy) {
    case DefenseStrategy::kShortest:
      leg.edges = ShortestPath(net_, from, to, travel_times_).edges;
      break;
    case DefenseStrategy::kInverse:
      leg.edges = ShortestPath(net_, from, to, inverse_scores()).edges;
      break;
    case DefenseStrategy::kMixnet:
      leg.edges = ShortestPath(net_, from, to, mixnet_scores).edges;
      break;
    case DefenseStrategy::kDisjoint: {
      auto paths = EdgeDisjointPaths(net_, from, to);
      leg.edges = std::move(paths[UniformIndex(rng, paths.size())].edges);
      break;
    }
    case DefenseStrategy::kRandomWalk: {
      NodeIndex cur = from;
      const long long cap = random_walk_cap();
      for (long long step = 0; step < cap && cur != to; ++step) {
        const auto options = net_.incident(cur);
        const Incidence& pick = options[UniformIndex(rng, options.size())];
        leg.edges.push_back(pick.edge);
        cur = pick.neighbor;
      }
      break;
    }
  }
  return leg;
}

RoutePlan RoutePlanner::Plan(const JobCard& card, DefenseStrategy strategy,
                             Seed seed) const {
  std::vector<NodeIndex> tour;
  for (const std::string& id : card.TourNodes())
    tour.push_back(net_.NodeAt(id));

  RoutePlan plan;
  plan.strategy = strategy;
  plan.courier_id = card.courier_id;
  plan.seed = seed;

  Rng rng = MakeRng(DeriveSeed(seed, "route"));
  std::vector<double> mixnet;
  if (strategy == DefenseStrategy::kMixnet) {
    // One fresh score per edge for this courier and round.
    Rng draw = MakeRng(DeriveSeed(seed, "mixnet"));
    mixnet.resize(net_.num_edges());
    for (double& s : mixnet) s = UniformUnit(draw);
  }
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) {
    Leg leg = PlanLeg(tour[i], tour[i + 1], strategy, mixnet, rng);
    const bool reached = WalkNodes(net_, leg.from, leg.edges).back() == leg.to;
    plan.legs.push_back(std::move(leg));
    if (!reached) {
      plan.failed = true;
      plan.failed_leg = static_cast<int>(i);
      break;
    }
  }
  return plan;
}

RoutePlan PlanRoute(const RoadNetwork& net, const JobCard& card,
                    DefenseStrategy strategy, Seed seed) {
  return RoutePlanner(net).Plan(card, strategy, seed);
}

void WriteRoutes(const RoadNetwork& net, std::span<const RoutePlan> routes,
                 std::ostream& out) {
  out << "courier_id,leg_index,edge_id,order\n";
  for (const RoutePlan& plan : routes) {
    for (std::size_t l = 0; l < plan.legs.size(); ++l) {
      const auto& edges = plan.legs[l].edges;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        out << plan.courier_id << ',' << l << ',' << net.edge(edges[i]).id
            << ',' << i << '\n';
      }
    }
  }
}

std::vector<RoutePlan> ReadRoutes(const RoadNetwork& net,
                                  std::span<const JobCard> fleet,
                                  std::istream& in, const std::string& name) {
  // courier -> leg -> order -> edge
  std::unordered_map<std::string,
                     std::map<long long, std::map<long long, EdgeIndex>>>
      rows;
  bool header = true;
  io::ForEachLine(in, [&](int number, const std::string& line) {
    const auto f = io::SplitCsv(line);
    if (header) {
      if (f != std::vector<std::string>{"courier_id", "leg_index", "edge_id",
                                        "order"}) {
        throw ParseError(
            name, number,
            "expected header 'courier_id,leg_index,edge_id,order'");
      }
      header = false;
      return;
    }
    if (f.size() != 4) throw ParseError(name, number, "expected 4 fields");
    long long leg = 0;
    long long order = 0;
    if (!io::ParseInt(f[1], &leg) || leg < 0) {
      throw ParseError(name, number, "bad leg_index");
    }
    if (!io::ParseInt(f[3], &order) || order < 0) {
      throw ParseError(name, number, "bad order");
    }
    auto e = net.FindEdge(f[2]);
    if (!e) throw ParseError(name, number, "unknown edge '" + f[2] + "'");
    if (!rows[f[0]][leg].emplace(order, *e).second) {
      throw ParseError(name, number, "duplicate order within leg");
    }
  });
  if (header) throw ParseError(name, 0, "missing header");

  for (const auto& [courier, legs] : rows) {
    const bool known =
        std::any_of(fleet.begin(), fleet.end(),
                    [&](const JobCard& c) { return c.courier_id == courier; });
    if (!known) {
      throw DomainError("route for unknown courier '" + courier + "'");
    }
  }

  std::vector<RoutePlan> plans;
  for (const JobCard& card : fleet) {
    std::vector<NodeIndex> tour;
    for (const std::string& id : card.TourNodes())
      tour.push_back(net.NodeAt(id));
    const auto found = rows.find(card.courier_id);
    RoutePlan plan;
    plan.courier_id = card.courier_id;
    const int num_legs = static_cast<int>(tour.size()) - 1;
    if (found != rows.end() && !found->second.empty() &&
        found->second.rbegin()->first >= num_legs) {
      throw DomainError("route for '" + card.courier_id +
                        "' has more legs than its job card");
    }
    for (int l = 0; l < num_legs; ++l) {
      Leg leg{tour[l], tour[l + 1], {}};
      if (found != rows.end()) {
        auto it = found->second.find(l);
        if (it != found->second.end()) {
          for (const auto& [order, e] : it->second) leg.edges.push_back(e);
        }
      }
      const bool reached = WalkNodes(net, leg.from, leg.edges).back() == leg.to;
      plan.legs.push_back(std::move(leg));
      if (!reached) {
        plan.failed = true;
        plan.failed_leg = l;
        break;
      }
    }
    if (plan.failed && found != rows.end() &&
        found->second.rbegin()->first > plan.failed_leg) {
      throw DomainError("route for '" + card.courier_id +
                        "' continues past a leg that misses its stop");
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace ambush
