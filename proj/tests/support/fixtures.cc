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

#include "fixtures.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <unordered_set>

namespace ambush::testing {

RoadNetwork MakeNetwork(const std::vector<EdgeSpec>& edges,
                        BuildOptions options) {
  std::vector<NodeRecord> nodes;
  std::unordered_set<std::string> seen;
  std::vector<EdgeRecord> records;
  for (const auto& [u, v, t] : edges) {
    for (const std::string& id : {u, v}) {
      if (seen.insert(id).second) {
        nodes.push_back({id, static_cast<double>(nodes.size()), 0.0});
      }
    }
    records.push_back({fmt::format("e{:02d}", records.size()), u, v, t, 1.0});
  }
  return RoadNetwork::Build(std::move(nodes), std::move(records), options);
}

RoadNetwork PathGraph(int n) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i + 1 < n; ++i) {
    e.emplace_back(fmt::format("a{}", i), fmt::format("a{}", i + 1), 1.0);
  }
  return MakeNetwork(e);
}

RoadNetwork CycleGraph(int n) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i < n; ++i) {
    e.emplace_back(fmt::format("c{}", i), fmt::format("c{}", (i + 1) % n), 1.0);
  }
  return MakeNetwork(e);
}

namespace {

void AddClique(std::vector<EdgeSpec>& e, int n, const std::string& prefix) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      e.emplace_back(fmt::format("{}{}", prefix, i),
                     fmt::format("{}{}", prefix, j), 1.0);
    }
  }
}

}  // namespace

RoadNetwork CompleteGraph(int n, const std::string& prefix) {
  std::vector<EdgeSpec> e;
  AddClique(e, n, prefix);
  return MakeNetwork(e);
}

RoadNetwork StarGraph(int leaves) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i < leaves; ++i)
    e.emplace_back("h", fmt::format("l{}", i), 1.0);
  return MakeNetwork(e);
}

RoadNetwork Barbell(int size) {
  std::vector<EdgeSpec> e;
  AddClique(e, size, "x");
  AddClique(e, size, "y");
  e.emplace_back(fmt::format("x{}", size - 1), "y0", 1.0);
  return MakeNetwork(e);
}

RoadNetwork RandomConnected(int n, int extra, Seed seed) {
  Rng rng = MakeRng(seed);
  constexpr double kTimes[] = {1.0, 2.0, 2.0, 3.0};
  std::set<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) {
    pairs.emplace(static_cast<int>(UniformIndex(rng, v)), v);
  }
  const int max_edges = n * (n - 1) / 2;
  while (static_cast<int>(pairs.size()) < std::min(max_edges, n - 1 + extra)) {
    int a = static_cast<int>(UniformIndex(rng, n));
    int b = static_cast<int>(UniformIndex(rng, n));
    if (a == b) continue;
    pairs.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<EdgeSpec> e;
  for (const auto& [a, b] : pairs) {
    e.emplace_back(fmt::format("v{}", a), fmt::format("v{}", b),
                   kTimes[UniformIndex(rng, 4)]);
  }
  return MakeNetwork(e);
}

std::filesystem::path DataDir() { return AMBUSH_TEST_DATA_DIR; }

RoadNetwork LoadGraphFixture(const std::string& name) {
  const auto dir = DataDir() / "graphs";
  return LoadNetwork(dir / (name + "_nodes.csv"), dir / (name + "_edges.csv"));
}

std::vector<std::string> GraphFixtureNames() {
  std::vector<std::string> names;
  for (const auto& entry :
       std::filesystem::directory_iterator(DataDir() / "graphs")) {
    const std::string file = entry.path().filename().string();
    const std::string suffix = "_nodes.csv";
    if (file.size() > suffix.size() &&
        file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
      names.push_back(file.substr(0, file.size() - suffix.size()));
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

JobCard MakeCard(const std::string& courier, const std::string& warehouse,
                 const std::vector<StopSpec>& stops, double day_start) {
  JobCard card;
  card.courier_id = courier;
  card.warehouse = warehouse;
  card.day_start = day_start;
  for (const StopSpec& s : stops)
    card.stops.push_back({s.node, s.start, s.end});
  return card;
}

}  // namespace ambush::testing
