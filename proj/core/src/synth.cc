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

#include "ambush/synth.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "ambush/errors.h"
#include "ambush/io.h"
#include "ambush/paths.h"

namespace ambush {
namespace {

constexpr int kMaxWidenings = 4;

class Builder {
 public:
  NodeIndex AddNode(std::string id, double x, double y) {
    nodes_.push_back({std::move(id), x, y});
    return static_cast<NodeIndex>(nodes_.size()) - 1;
  }
  void AddEdge(NodeIndex u, NodeIndex v, double length, double time) {
    pending_.push_back({u, v, length, length / time});
  }
  RoadNetwork Build() {
    const int width = static_cast<int>(
        std::to_string(std::max<std::size_t>(pending_.size(), 1) - 1).size());
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      const Pending& p = pending_[i];
      edges.push_back({fmt::format("e{:0{}}", i, width), nodes_[p.u].id,
                       nodes_[p.v].id, p.length, p.speed});
    }
    return RoadNetwork::Build(nodes_, std::move(edges));
  }

 private:
  struct Pending {
    NodeIndex u;
    NodeIndex v;
    double length;
    double speed;
  };
  std::vector<NodeRecord> nodes_;
  std::vector<Pending> pending_;
};

// rows x cols lattice with ids prefix{r}_{c}; returns node indices
// row-major.
std::vector<NodeIndex> AddLattice(Builder& b, const CityParams& p,
                                  const std::string& prefix, double x0) {
  std::vector<NodeIndex> idx;
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      idx.push_back(b.AddNode(fmt::format("{}{}_{}", prefix, r, c),
                              x0 + c * p.edge_length_m, r * p.edge_length_m));
    }
  }
  auto at = [&](int r, int c) { return idx[r * p.cols + c]; };
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      if (c + 1 < p.cols) {
        b.AddEdge(at(r, c), at(r, c + 1), p.edge_length_m, p.edge_time_s);
      }
      if (r + 1 < p.rows) {
        b.AddEdge(at(r, c), at(r + 1, c), p.edge_length_m, p.edge_time_s);
      }
    }
  }
  return idx;
}

void RequirePositive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

City Grid(const CityParams& p) {
  if (p.rows < 2 || p.cols < 2) throw DomainError("grid needs rows, cols >= 2");
  Builder b;
  auto idx = AddLattice(b, p, "n", 0.0);
  return City{b.Build(), {idx}};
}

City TwoCluster(const CityParams& p) {
  if (p.rows < 2 || p.cols < 2) {
    throw DomainError("two_cluster blocks need rows, cols >= 2");
  }
  if (p.bridges < 1 || p.bridges > p.rows) {
    throw DomainError("two_cluster needs 1 <= bridges <= rows");
  }
  if (p.bypass_hops < 0) throw DomainError("bypass_hops must be >= 0");
  RequirePositive(p.bypass_edge_time_s, "bypass_edge_time_s");
  const double gap = p.edge_length_m;
  const double width = (p.cols - 1) * p.edge_length_m;
  Builder b;
  auto a = AddLattice(b, p, "a", 0.0);
  auto bb = AddLattice(b, p, "b", width + gap);
  // Bridges leave the facing columns at rows spaced evenly and
  // symmetrically over the block.
  for (int i = 0; i < p.bridges; ++i) {
    const double pos = (i + 1) * (p.rows - 1.0) / (p.bridges + 1.0);
    const int row =
        std::clamp(static_cast<int>(std::floor(pos + 0.5)), 0, p.rows - 1);
    b.AddEdge(a[row * p.cols + p.cols - 1], bb[row * p.cols], gap,
              p.edge_time_s);
  }
  if (p.bypass_hops >= 1) {
    // A chain between the block centres. Few hops but slow: hop-blind
    // routing finds it, travel-time routing does not.
    const int centre = (p.rows / 2) * p.cols + p.cols / 2;
    const NodeIndex from = a[centre];
    const NodeIndex to = bb[centre];
    const double x0 = (p.cols / 2) * p.edge_length_m;
    const double step = (width + gap) / p.bypass_hops;
    NodeIndex prev = from;
    for (int h = 1; h < p.bypass_hops; ++h) {
      const NodeIndex next =
          b.AddNode(fmt::format("p{}", h), x0 + h * step, -p.edge_length_m);
      b.AddEdge(prev, next, step, p.bypass_edge_time_s);
      prev = next;
    }
    b.AddEdge(prev, to, step, p.bypass_edge_time_s);
  }
  return City{b.Build(), {a, bb}};
}

City Geometric(const CityParams& p, Seed seed) {
  if (p.n < 2) throw DomainError("geometric city needs n >= 2");
  RequirePositive(p.radius, "radius");
  RequirePositive(p.extent_m, "extent_m");
  RequirePositive(p.speed_mps, "speed_mps");
  if (p.max_retries < 1) throw DomainError("max_retries must be >= 1");
  const double reach = p.radius * p.extent_m;
  for (int attempt = 0; attempt < p.max_retries; ++attempt) {
    Rng rng = MakeRng(DeriveSeed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<NodeRecord> nodes;
    const int width = static_cast<int>(std::to_string(p.n - 1).size());
    for (int i = 0; i < p.n; ++i) {
      const double x = UniformUnit(rng) * p.extent_m;
      const double y = UniformUnit(rng) * p.extent_m;
      nodes.push_back({fmt::format("g{:0{}}", i, width), x, y});
    }
    std::vector<EdgeRecord> edges;
    for (int i = 0; i < p.n; ++i) {
      for (int j = i + 1; j < p.n; ++j) {
        const double d =
            std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
        if (d > 0.0 && d <= reach) {
          edges.push_back({"", nodes[i].id, nodes[j].id, d, p.speed_mps});
        }
      }
    }
    const int ew = static_cast<int>(
        std::to_string(std::max<std::size_t>(edges.size(), 1) - 1).size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      edges[e].id = fmt::format("e{:0{}}", e, ew);
    }
    BuildOptions loose;
    loose.require_connected = false;
    RoadNetwork net = RoadNetwork::Build(nodes, edges, loose);
    if (!net.IsConnected()) continue;
    std::vector<NodeIndex> all(net.num_nodes());
    for (NodeIndex v = 0; v < net.num_nodes(); ++v) all[v] = v;
    return City{std::move(net), {std::move(all)}};
  }
  throw Error(fmt::format(
      "geometric city with n={} radius={} stayed disconnected after {} "
      "attempts; try a larger radius",
      p.n, p.radius, p.max_retries));
}

}  // namespace

SynthesisResult SynthesizeTraces(std::span<const JobCard> base,
                                 const RoadNetwork& base_net,
                                 const RoadNetwork& target_net,
                                 const TraceTolerance& tolerance, Seed seed) {
  if (!(tolerance.relative_tolerance > 0.0 &&
        tolerance.relative_tolerance < 1.0)) {
    throw DomainError("relative_tolerance must lie in (0, 1)");
  }
  if (tolerance.max_candidates < 0) {
    throw DomainError("max_candidates must be >= 0");
  }
  const auto base_times = base_net.TravelTimes();
  const auto target_times = target_net.TravelTimes();
  std::map<NodeIndex, std::vector<double>> base_cache;
  auto base_leg = [&](NodeIndex from, NodeIndex to) {
    auto it = base_cache.find(from);
    if (it == base_cache.end()) {
      it = base_cache
               .emplace(from, ShortestDistances(base_net, from, base_times))
               .first;
    }
    return it->second[to];
  };

  SynthesisResult out;
  for (const JobCard& card : base) {
    ValidateJobCard(card);
    Rng rng = MakeRng(DeriveSeed(seed, card.courier_id));
    std::vector<NodeIndex> base_nodes{base_net.NodeAt(card.warehouse)};
    for (const Stop& s : card.stops)
      base_nodes.push_back(base_net.NodeAt(s.node_id));

    JobCard synth = card;
    NodeIndex prev = static_cast<NodeIndex>(
        UniformIndex(rng, static_cast<std::uint64_t>(target_net.num_nodes())));
    synth.warehouse = target_net.node(prev).id;
    for (std::size_t i = 0; i < card.stops.size(); ++i) {
      const double want = base_leg(base_nodes[i], base_nodes[i + 1]);
      const auto dist = ShortestDistances(target_net, prev, target_times);
      double tol = tolerance.relative_tolerance;
      std::vector<NodeIndex> candidates;
      for (int widen = 0;; ++widen) {
        candidates.clear();
        for (NodeIndex v = 0; v < target_net.num_nodes(); ++v) {
          if (std::abs(dist[v] - want) <= tol * want) candidates.push_back(v);
        }
        if (!candidates.empty()) break;
        // A relative tolerance of 1 would admit standing still.
        if (widen == kMaxWidenings || 2.0 * tol >= 1.0) {
          throw DomainError(fmt::format(
              "courier '{}' leg to seq {}: no target node within {} of base "
              "leg {} s",
              card.courier_id, i + 1, tol, want));
        }
        tol *= 2.0;
      }
      if (tolerance.max_candidates > 0 &&
          candidates.size() >
              static_cast<std::size_t>(tolerance.max_candidates)) {
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](NodeIndex a, NodeIndex b) {
                           return std::abs(dist[a] - want) <
                                  std::abs(dist[b] - want);
                         });
        candidates.resize(tolerance.max_candidates);
        std::sort(candidates.begin(), candidates.end());
      }
      const NodeIndex next = candidates[UniformIndex(rng, candidates.size())];
      synth.stops[i].node_id = target_net.node(next).id;
      out.audit.push_back(
          {card.courier_id, static_cast<int>(i + 1), want, dist[next], tol});
      prev = next;
    }
    out.cards.push_back(std::move(synth));
  }
  return out;
}

void WriteTraceAudit(std::span<const LegAudit> audit, std::ostream& out) {
  out << "courier_id,seq,base_leg_s,synth_leg_s,tolerance_used\n";
  for (const LegAudit& a : audit) {
    out << a.courier_id << ',' << a.seq << ',' << io::FormatDouble(a.base_leg_s)
        << ',' << io::FormatDouble(a.synth_leg_s) << ','
        << io::FormatDouble(a.tolerance_used) << '\n';
  }
}

std::string_view ToString(CityKind kind) {
  switch (kind) {
    case CityKind::kGrid:
      return "grid";
    case CityKind::kGeometric:
      return "geometric";
    case CityKind::kTwoCluster:
      return "two_cluster";
  }
  return "?";
}

std::optional<CityKind> ParseCityKind(std::string_view name) {
  for (CityKind k :
       {CityKind::kGrid, CityKind::kGeometric, CityKind::kTwoCluster}) {
    if (ToString(k) == name) return k;
  }
  return std::nullopt;
}

City GenerateCity(const CityParams& params, Seed seed) {
  RequirePositive(params.edge_length_m, "edge_length_m");
  RequirePositive(params.edge_time_s, "edge_time_s");
  switch (params.kind) {
    case CityKind::kGrid:
      return Grid(params);
    case CityKind::kGeometric:
      return Geometric(params, seed);
    case CityKind::kTwoCluster:
      return TwoCluster(params);
  }
  throw DomainError("unknown city kind");
}

std::vector<JobCard> GenerateFleet(const City& city, const FleetParams& params,
                                   Seed seed) {
  if (params.couriers < 1 || params.stops < 1) {
    throw DomainError("fleet needs couriers >= 1 and stops >= 1");
  }
  RequirePositive(params.window_s, "window_s");
  const RoadNetwork& net = city.net;
  std::vector<NodeIndex> all(net.num_nodes());
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) all[v] = v;
  const bool cross = params.cross_zones && city.zones.size() >= 2;
  auto zone = [&](int i) -> const std::vector<NodeIndex>& {
    return cross ? city.zones[i % city.zones.size()] : all;
  };
  const auto times = net.TravelTimes();
  const int width =
      static_cast<int>(std::to_string(params.couriers - 1).size());

  std::vector<JobCard> fleet;
  for (int c = 0; c < params.couriers; ++c) {
    JobCard card;
    card.courier_id = fmt::format("c{:0{}}", c, width);
    card.day_start = params.day_start_s;
    Rng rng = MakeRng(DeriveSeed(seed, card.courier_id));
    auto draw = [&](const std::vector<NodeIndex>& pool, NodeIndex avoid) {
      NodeIndex v = pool[UniformIndex(rng, pool.size())];
      while (pool.size() > 1 && v == avoid)
        v = pool[UniformIndex(rng, pool.size())];
      return v;
    };
    NodeIndex prev = draw(zone(0), kNoNode);
    card.warehouse = net.node(prev).id;
    double t = params.day_start_s;
    for (int i = 0; i < params.stops; ++i) {
      const NodeIndex next = draw(zone(i + 1), prev);
      t += ShortestPath(net, prev, next, times).weight;
      card.stops.push_back({net.node(next).id, t - 0.5 * params.window_s,
                            t + 0.5 * params.window_s});
      prev = next;
    }
    fleet.push_back(std::move(card));
  }
  return fleet;
}

}  // namespace ambush
