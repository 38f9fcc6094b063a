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

#include "ambush/simulation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ambush/errors.h"
#include "ambush/io.h"
#include "ambush/parallel.h"
#include "ambush/paths.h"

namespace ambush {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DomainError Mismatch(const JobCard& card, const std::string& what) {
  return DomainError("route does not match job card '" + card.courier_id +
                     "': " + what);
}

void CheckPlan(const RoadNetwork& net, const RoutePlan& plan,
               const JobCard& card, std::span<const NodeIndex> tour) {
  if (plan.courier_id != card.courier_id) {
    throw Mismatch(card, "route is for '" + plan.courier_id + "'");
  }
  const std::size_t full = tour.size() - 1;
  const std::size_t expected =
      plan.failed ? static_cast<std::size_t>(plan.failed_leg) + 1 : full;
  if (plan.failed && (plan.failed_leg < 0 ||
                      static_cast<std::size_t>(plan.failed_leg) >= full)) {
    throw Mismatch(card, "bad failed_leg");
  }
  if (plan.legs.size() != expected) {
    throw Mismatch(card, "expected " + std::to_string(expected) +
                             " legs, got " + std::to_string(plan.legs.size()));
  }
  for (std::size_t i = 0; i < plan.legs.size(); ++i) {
    const Leg& leg = plan.legs[i];
    if (leg.from != tour[i] || leg.to != tour[i + 1]) {
      throw Mismatch(card, "leg " + std::to_string(i) + " endpoints differ");
    }
    for (EdgeIndex e : leg.edges) {
      if (e < 0 || e >= net.num_edges()) {
        throw Mismatch(card, "leg " + std::to_string(i) + " has a bad edge");
      }
    }
    const bool last_failed = plan.failed && i + 1 == plan.legs.size();
    if (!last_failed && WalkNodes(net, leg.from, leg.edges).back() != leg.to) {
      throw Mismatch(card, "leg " + std::to_string(i) + " misses its stop");
    }
  }
}

}  // namespace

std::string_view ToString(DeliveryStatus s) {
  switch (s) {
    case DeliveryStatus::kOnTime:
      return "on_time";
    case DeliveryStatus::kLate:
      return "late";
    case DeliveryStatus::kCriticallyLate:
      return "critically_late";
  }
  return "?";
}

TourResult RunTour(const RoadNetwork& net, const RoutePlan& plan,
                   const JobCard& card, std::span<const char> attacked,
                   double ambush_delay) {
  if (!(ambush_delay > 0.0) || !std::isfinite(ambush_delay)) {
    throw DomainError("ambush delay must be positive");
  }
  if (attacked.size() != static_cast<std::size_t>(net.num_edges())) {
    throw DomainError("attack mask size does not match the network");
  }
  std::vector<NodeIndex> tour;
  for (const std::string& id : card.TourNodes()) tour.push_back(net.NodeAt(id));
  CheckPlan(net, plan, card, tour);

  TourResult r;
  r.courier_id = card.courier_id;
  r.failed = plan.failed;
  double t = card.day_start;
  for (std::size_t i = 0; i < plan.legs.size(); ++i) {
    for (EdgeIndex e : plan.legs[i].edges) {
      const double tt = net.edge(e).travel_time();
      t += tt;
      r.driving_time += tt;
      if (attacked[e]) {
        t += ambush_delay;
        ++r.ambush_count;
      }
    }
    if (plan.failed && i + 1 == plan.legs.size()) break;
    if (i < card.stops.size()) {
      const Stop& stop = card.stops[i];
      t = std::max(t, stop.window_start);
      r.arrivals.push_back(t);
    }
  }
  // Stops the courier never reaches.
  r.arrivals.resize(card.stops.size(), kInf);
  r.tour_time = plan.failed ? kInf : t - card.day_start;

  for (std::size_t i = 0; i < card.stops.size(); ++i) {
    const Stop& s = card.stops[i];
    const double lateness = r.arrivals[i] - s.window_end;
    DeliveryStatus st = DeliveryStatus::kOnTime;
    if (lateness > 0.0) {
      st = lateness > 0.5 * s.window_size() ? DeliveryStatus::kCriticallyLate
                                            : DeliveryStatus::kLate;
    }
    r.status.push_back(st);
  }
  return r;
}

TourResult RunTour(const RoadNetwork& net, const RoutePlan& plan,
                   const JobCard& card, const AttackPlan& attack,
                   double ambush_delay) {
  const auto mask = attack.Mask(net.num_edges());
  return RunTour(net, plan, card, mask, ambush_delay);
}

RoundMetrics Aggregate(std::span<const TourResult> tours) {
  RoundMetrics m;
  std::vector<double> completed;
  for (const TourResult& t : tours) {
    m.total_ambushes += t.ambush_count;
    for (DeliveryStatus s : t.status) {
      ++m.total_deliveries;
      if (s != DeliveryStatus::kOnTime) ++m.total_late;
      if (s == DeliveryStatus::kCriticallyLate) ++m.total_critical;
    }
    if (t.failed) {
      ++m.failed_tours;
    } else {
      completed.push_back(t.tour_time);
    }
  }
  if (m.total_deliveries > 0) {
    m.late_fraction = static_cast<double>(m.total_late) /
                      static_cast<double>(m.total_deliveries);
  }
  if (m.total_late > 0) {
    m.critical_fraction_of_late = static_cast<double>(m.total_critical) /
                                  static_cast<double>(m.total_late);
  }
  if (!completed.empty()) {
    double sum = 0.0;
    for (double x : completed) sum += x;
    m.mean_tour_time = sum / static_cast<double>(completed.size());
    std::sort(completed.begin(), completed.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(completed.size())));
    m.p95_tour_time = completed[std::max<std::size_t>(rank, 1) - 1];
  }
  return m;
}

Seed CourierSeed(Seed round_seed, const std::string& courier_id) {
  return DeriveSeed(round_seed, courier_id);
}

RoundOutcome PlayRound(const RoutePlanner& planner,
                       std::span<const JobCard> fleet, const AttackPlan& attack,
                       DefenseStrategy defense, double ambush_delay,
                       Seed round_seed, int workers) {
  const RoadNetwork& net = planner.network();
  if (defense == DefenseStrategy::kInverse) planner.inverse_scores();
  const auto mask = attack.Mask(net.num_edges());
  RoundOutcome out;
  out.routes.resize(fleet.size());
  out.tours.resize(fleet.size());
  ParallelFor(static_cast<int>(fleet.size()), workers, [&](int i) {
    const JobCard& card = fleet[i];
    out.routes[i] =
        planner.Plan(card, defense, CourierSeed(round_seed, card.courier_id));
    out.tours[i] = RunTour(net, out.routes[i], card, mask, ambush_delay);
  });
  out.metrics = Aggregate(out.tours);
  return out;
}

RoundOutcome ReplayRound(const RoadNetwork& net, std::span<const JobCard> fleet,
                         std::span<const RoutePlan> routes,
                         const AttackPlan& attack, double ambush_delay,
                         int workers) {
  if (routes.size() != fleet.size()) {
    throw DomainError("route count does not match fleet size");
  }
  const auto mask = attack.Mask(net.num_edges());
  RoundOutcome out;
  out.routes.assign(routes.begin(), routes.end());
  out.tours.resize(fleet.size());
  ParallelFor(static_cast<int>(fleet.size()), workers, [&](int i) {
    out.tours[i] = RunTour(net, routes[i], fleet[i], mask, ambush_delay);
  });
  out.metrics = Aggregate(out.tours);
  return out;
}

RoundMetrics RunRound(const RoadNetwork& net, std::span<const JobCard> fleet,
                      AttackStrategy attack, DefenseStrategy defense, int k,
                      double ambush_delay, Seed seed, int workers) {
  if (fleet.empty()) throw DomainError("fleet is empty");
  AttackOptions options;
  options.workers = workers;
  const AttackPlan plan =
      SelectAttackEdges(net, attack, k, DeriveSeed(seed, "attack"), options);
  const RoutePlanner planner(net);
  return PlayRound(planner, fleet, plan, defense, ambush_delay, seed, workers)
      .metrics;
}

std::vector<JobCard> ApplyWindowMultiplier(std::span<const JobCard> fleet,
                                           double multiplier) {
  if (!(multiplier >= 1.0) || !std::isfinite(multiplier)) {
    throw DomainError("window multiplier must be >= 1");
  }
  std::vector<JobCard> out(fleet.begin(), fleet.end());
  // s + (e - s) can round away from e, so 1.0 is an exact identity.
  if (multiplier == 1.0) return out;
  for (JobCard& card : out) {
    for (Stop& s : card.stops) {
      s.window_end =
          s.window_start + multiplier * (s.window_end - s.window_start);
    }
  }
  return out;
}

void WriteRoundRecord(const RoundRecord& r, std::ostream& out) {
  const RoundMetrics& m = r.metrics;
  out << r.attack << ',' << r.defense << ',' << r.k << ','
      << io::FormatDouble(r.ambush_delay) << ','
      << io::FormatDouble(r.window_mult) << ','
      << io::FormatDouble(m.late_fraction) << ','
      << io::FormatDouble(m.critical_fraction_of_late) << ','
      << io::FormatDouble(m.mean_tour_time) << ','
      << io::FormatDouble(m.p95_tour_time) << ',' << m.total_ambushes;
}

}  // namespace ambush
