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

#ifndef AMBUSH_SYNTH_H_
#define AMBUSH_SYNTH_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush {

struct TraceTolerance {
  // Allowed |synthetic - base| / base travel time for one leg.
  double relative_tolerance = 0.10;
  // If positive, only the this-many candidates closest to the base leg time
  // are eligible.
  int max_candidates = 0;
};

// Per-leg audit record for a synthesized card.
struct LegAudit {
  std::string courier_id;
  int seq = 0;
  double base_leg_s = 0.0;
  double synth_leg_s = 0.0;
  double tolerance_used = 0.0;
};

struct SynthesisResult {
  std::vector<JobCard> cards;
  std::vector<LegAudit> audit;
};

// Moves each card onto `target`. The warehouse is drawn uniformly from the
// target nodes; each following stop is drawn uniformly among nodes whose
// shortest travel time from the previous synthetic location is within the
// tolerance of the base card's corresponding leg. When no node qualifies the
// tolerance doubles, at most four times and only while it stays below 1,
// before a DomainError names the leg. Windows and day_start are copied
// unchanged.
SynthesisResult SynthesizeTraces(std::span<const JobCard> base,
                                 const RoadNetwork& base_net,
                                 const RoadNetwork& target_net,
                                 const TraceTolerance& tolerance, Seed seed);

// Sidecar: `courier_id,seq,base_leg_s,synth_leg_s,tolerance_used`.
void WriteTraceAudit(std::span<const LegAudit> audit, std::ostream& out);

enum class CityKind { kGrid, kGeometric, kTwoCluster };

std::string_view ToString(CityKind kind);
std::optional<CityKind> ParseCityKind(std::string_view name);

struct CityParams {
  CityKind kind = CityKind::kGrid;
  // grid and two_cluster: lattice size (per block for two_cluster).
  int rows = 4;
  int cols = 4;
  double edge_length_m = 100.0;
  double edge_time_s = 60.0;
  // geometric: n points in a square of side extent_m, joined when closer
  // than radius * extent_m, driven at speed_mps.
  int n = 60;
  double radius = 0.2;
  double extent_m = 2000.0;
  double speed_mps = 10.0;
  int max_retries = 100;
  // two_cluster: bridges between the blocks' facing columns, and an
  // optional bypass chain of `bypass_hops` edges (0 = none) between the
  // block centres, each taking bypass_edge_time_s.
  int bridges = 2;
  int bypass_hops = 0;
  double bypass_edge_time_s = 60.0;
};

struct City {
  RoadNetwork net;
  // Node groups: one per block for two_cluster (bypass nodes excluded),
  // a single group of every node otherwise.
  std::vector<std::vector<NodeIndex>> zones;
};

// Throws DomainError on invalid parameters, and Error when a geometric city
// stays disconnected after max_retries draws.
City GenerateCity(const CityParams& params, Seed seed);

struct FleetParams {
  int couriers = 10;
  int stops = 6;
  double window_s = 1800.0;
  double day_start_s = 8 * 3600.0;
  // Alternate stops between zones (warehouse in zone 0, stop i in zone
  // (i + 1) % zones). Otherwise stops are uniform over all nodes.
  bool cross_zones = false;
};

// Random cards whose windows are centred on the arrival time of an
// unattacked shortest-path courier, so that courier never waits.
std::vector<JobCard> GenerateFleet(const City& city, const FleetParams& params,
                                   Seed seed);

}  // namespace ambush

#endif  // AMBUSH_SYNTH_H_
