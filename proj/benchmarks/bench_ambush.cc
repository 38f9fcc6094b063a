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

#include <benchmark/benchmark.h>

#include <vector>

#include "ambush/attack.h"
#include "ambush/centrality.h"
#include "ambush/community.h"
#include "ambush/defense.h"
#include "ambush/game.h"
#include "ambush/simulation.h"
#include "ambush/synth.h"

namespace ambush {
namespace {

City Grid(int side) {
  CityParams p;
  p.kind = CityKind::kGrid;
  p.rows = side;
  p.cols = side;
  return GenerateCity(p, 1);
}

City TwoBlocks(int side) {
  CityParams p;
  p.kind = CityKind::kTwoCluster;
  p.rows = side;
  p.cols = side;
  p.bridges = 2;
  return GenerateCity(p, 1);
}

void BM_Betweenness(benchmark::State& state) {
  const City city = Grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Centrality(city.net, CentralityKind::kBetweenness));
  }
  state.SetComplexityN(city.net.num_nodes());
}
BENCHMARK(BM_Betweenness)->Arg(8)->Arg(16)->Arg(24)->Complexity();

void BM_Eigenvector(benchmark::State& state) {
  const City city = Grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Centrality(city.net, CentralityKind::kEigenvector));
  }
}
BENCHMARK(BM_Eigenvector)->Arg(16)->Arg(32);

void BM_HierarchicalModularity(benchmark::State& state) {
  const City city = TwoBlocks(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        AgglomerativeModularity(city.net, AgglomerativeVariant::kHierarchical));
  }
}
BENCHMARK(BM_HierarchicalModularity)->Arg(8)->Arg(16);

void BM_GreedyModularity(benchmark::State& state) {
  const City city = TwoBlocks(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        AgglomerativeModularity(city.net, AgglomerativeVariant::kGreedy));
  }
}
BENCHMARK(BM_GreedyModularity)->Arg(8)->Arg(16);

void BM_FlowPartition(benchmark::State& state) {
  const City city = TwoBlocks(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FlowPartition(city.net, {}, 1));
  }
}
BENCHMARK(BM_FlowPartition)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Round(benchmark::State& state) {
  const City city = TwoBlocks(16);
  FleetParams f;
  f.couriers = static_cast<int>(state.range(0));
  f.cross_zones = true;
  const auto fleet = GenerateFleet(city, f, 1);
  const RoutePlanner planner(city.net);
  const AttackPlan attack =
      SelectAttackEdges(city.net, AttackStrategy::kBetweenness, 30, 1);
  Seed seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PlayRound(planner, fleet, attack,
                                       DefenseStrategy::kMixnet, 600, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Round)->Arg(20)->Arg(100);

void BM_SolveZeroSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = MakeRng(7);
  Matrix m(n, std::vector<double>(n));
  for (auto& row : m) {
    for (double& v : row) v = UniformUnit(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(SolveZeroSum(m));
}
BENCHMARK(BM_SolveZeroSum)->Arg(3)->Arg(9)->Arg(30);

}  // namespace
}  // namespace ambush

BENCHMARK_MAIN();
