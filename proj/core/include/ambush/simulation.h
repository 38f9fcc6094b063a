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

#ifndef AMBUSH_SIMULATION_H_
#define AMBUSH_SIMULATION_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/attack.h"
#include "ambush/defense.h"
#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush {

inline constexpr double kDefaultAmbushDelay = 600.0;

enum class DeliveryStatus { kOnTime, kLate, kCriticallyLate };

std::string_view ToString(DeliveryStatus s);

struct TourResult {
  std::string courier_id;
  // Per stop, seconds of day. A stop never reached (failed route) has
  // arrival +inf and is critically late.
  std::vector<double> arrivals;
  std::vector<DeliveryStatus> status;
  int ambush_count = 0;
  // Return to warehouse minus day_start; +inf for a failed route.
  double tour_time = 0.0;
  // Sum of travel times of every traversed edge.
  double driving_time = 0.0;
  bool failed = false;
};

// Walks `plan` edge by edge. Each traversal of an attacked edge costs
// `ambush_delay` and the courier continues from the far endpoint. Early
// arrivals wait for window_start. Late: arrival > window_end. Critically
// late: lateness > half the window size.
//
// Throws DomainError if the plan does not belong to `card`, if
// `attacked.size() != |E|`, or if ambush_delay <= 0.
TourResult RunTour(const RoadNetwork& net, const RoutePlan& plan,
                   const JobCard& card, std::span<const char> attacked,
                   double ambush_delay = kDefaultAmbushDelay);
TourResult RunTour(const RoadNetwork& net, const RoutePlan& plan,
                   const JobCard& card, const AttackPlan& attack,
                   double ambush_delay = kDefaultAmbushDelay);

struct RoundMetrics {
  double late_fraction = 0.0;
  // Critically late over late; 0 when nothing is late.
  double critical_fraction_of_late = 0.0;
  // Over completed tours only; 0 when every tour failed.
  double mean_tour_time = 0.0;
  // Nearest-rank 95th percentile over completed tours.
  double p95_tour_time = 0.0;
  long long total_deliveries = 0;
  long long total_late = 0;
  long long total_critical = 0;
  long long total_ambushes = 0;
  long long failed_tours = 0;
};

RoundMetrics Aggregate(std::span<const TourResult> tours);

struct RoundOutcome {
  RoundMetrics metrics;
  std::vector<RoutePlan> routes;
  std::vector<TourResult> tours;
};

// Per-courier route seed for a round: DeriveSeed(round_seed, courier_id).
Seed CourierSeed(Seed round_seed, const std::string& courier_id);

// Defense phase and tours for a fixed attack. Couriers are routed and
// simulated on up to `workers` threads; the result does not depend on it.
RoundOutcome PlayRound(const RoutePlanner& planner,
                       std::span<const JobCard> fleet, const AttackPlan& attack,
                       DefenseStrategy defense, double ambush_delay,
                       Seed round_seed, int workers = 1);

// Replays fixed routes against an attack.
RoundOutcome ReplayRound(const RoadNetwork& net, std::span<const JobCard> fleet,
                         std::span<const RoutePlan> routes,
                         const AttackPlan& attack, double ambush_delay,
                         int workers = 1);

// Full round: the attack plan uses DeriveSeed(seed, "attack"), routes use
// CourierSeed(seed, courier_id). Throws DomainError on an empty fleet.
RoundMetrics RunRound(const RoadNetwork& net, std::span<const JobCard> fleet,
                      AttackStrategy attack, DefenseStrategy defense, int k,
                      double ambush_delay, Seed seed, int workers = 1);

// window_end' = window_start + multiplier * (window_end - window_start).
// Throws DomainError if multiplier < 1.
std::vector<JobCard> ApplyWindowMultiplier(std::span<const JobCard> fleet,
                                           double multiplier);

// One row of the round-metrics export.
struct RoundRecord {
  std::string attack;
  std::string defense;
  int k = 0;
  double ambush_delay = kDefaultAmbushDelay;
  double window_mult = 1.0;
  RoundMetrics metrics;
};

inline constexpr std::string_view kRoundMetricsHeader =
    "attack,defense,k,M,window_mult,late_frac,crit_frac_of_late,mean_tour_s,"
    "p95_tour_s,ambushes";

// Writes the record fields in header order, without a newline.
void WriteRoundRecord(const RoundRecord& r, std::ostream& out);

}  // namespace ambush

#endif  // AMBUSH_SIMULATION_H_
