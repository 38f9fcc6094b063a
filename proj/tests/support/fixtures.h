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

#ifndef AMBUSH_TESTS_FIXTURES_H_
#define AMBUSH_TESTS_FIXTURES_H_

#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"

namespace ambush::testing {

// (u, v, travel time in seconds). Nodes are created in first-mention order,
// edges get ids e00, e01, ... and speed 1 m/s.
using EdgeSpec = std::tuple<std::string, std::string, double>;
RoadNetwork MakeNetwork(const std::vector<EdgeSpec>& edges,
                        BuildOptions options = {});

// Path a0 - a1 - ... - a{n-1}.
RoadNetwork PathGraph(int n);
RoadNetwork CycleGraph(int n);
RoadNetwork CompleteGraph(int n, const std::string& prefix = "k");
// Hub "h" and leaves "l0".. with unit times.
RoadNetwork StarGraph(int leaves);
// Two complete graphs on `size` nodes joined by one bridge x{size-1} - y0.
RoadNetwork Barbell(int size);

// Random connected graph: a random spanning tree plus `extra` chords, with
// travel times drawn from {1, 2, 2, 3} so that equal-cost paths are common.
RoadNetwork RandomConnected(int n, int extra, Seed seed);

// Bundled file fixtures under tests/data/graphs.
std::filesystem::path DataDir();
RoadNetwork LoadGraphFixture(const std::string& name);
std::vector<std::string> GraphFixtureNames();

// A card over explicit (node, window_start, window_end) stops.
struct StopSpec {
  std::string node;
  double start;
  double end;
};
JobCard MakeCard(const std::string& courier, const std::string& warehouse,
                 const std::vector<StopSpec>& stops, double day_start = 0.0);

}  // namespace ambush::testing

#endif  // AMBUSH_TESTS_FIXTURES_H_
