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

#ifndef AMBUSH_EXPERIMENT_H_
#define AMBUSH_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambush/attack.h"
#include "ambush/defense.h"
#include "ambush/game.h"
#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"
#include "ambush/simulation.h"
#include "ambush/synth.h"

namespace ambush {

// Everything an experiment run needs. Loaded from flat `key = value` text;
// see ConfigKeysHelp() for the key list.
struct ExperimentConfig {
  // Network: files, or a generator when `city` is set.
  std::filesystem::path nodes_path;
  std::filesystem::path edges_path;
  std::optional<CityParams> city;
  Seed city_seed = 1;

  // Fleet: a job-card file, a generator (`fleet`), or trace synthesis from
  // a base network and cards onto the experiment network.
  std::filesystem::path jobcards_path;
  std::optional<FleetParams> fleet;
  Seed fleet_seed = 1;
  std::filesystem::path synth_base_nodes;
  std::filesystem::path synth_base_edges;
  std::filesystem::path synth_base_jobcards;
  TraceTolerance synth_tolerance;
  Seed synth_seed = 1;

  std::vector<AttackStrategy> attacks{kAllAttacks.begin(), kAllAttacks.end()};
  std::vector<DefenseStrategy> defenses{DefenseStrategy::kShortest,
                                        DefenseStrategy::kInverse,
                                        DefenseStrategy::kMixnet};
  int k = 30;
  double ambush_delay = kDefaultAmbushDelay;
  std::vector<double> window_multipliers;
  std::vector<int> attacker_counts{1, 5, 10, 20, 30, 40, 50};
  std::vector<Seed> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  bool nested_plans = false;
  double epsilon = 1e-6;

  // Run settings. They never change results and are left out of the hash.
  std::filesystem::path output_dir = "out";
  int workers = 1;

  ExperimentConfig();
};

// Throws ValidationError on k < 1, a multiplier < 1, empty strategy or seed
// lists, or a missing network/fleet source.
void ValidateConfig(const ExperimentConfig& cfg);

// Relative paths resolve against `base_dir`. Unknown keys and malformed
// values raise ParseError.
ExperimentConfig ReadConfig(std::istream& in, const std::string& name,
                            const std::filesystem::path& base_dir);
ExperimentConfig LoadConfig(const std::filesystem::path& file);

// Applies one `key = value` setting; used by the reader and by CLI
// overrides. Throws ParseError(name, line, ...) on bad input.
void SetConfigValue(ExperimentConfig* cfg, std::string_view key,
                    std::string_view value, const std::string& name = "config",
                    int line = 0, const std::filesystem::path& base_dir = {});

// Key list with defaults, for --help.
std::string ConfigKeysHelp();

// Result-relevant fields as sorted `key=value` lines, and their FNV-1a hash.
std::string CanonicalConfig(const ExperimentConfig& cfg);
std::uint64_t ConfigHash(const ExperimentConfig& cfg);

struct Scenario {
  RoadNetwork net;
  std::vector<JobCard> fleet;
  // Audit of synthesized legs, if the fleet came from trace synthesis.
  std::vector<LegAudit> synth_audit;
};

Scenario LoadScenario(const ExperimentConfig& cfg);

struct MatrixResult {
  PayoffMatrix payoff;
  std::vector<Cell> pure;
  Equilibrium mixed;
};

MatrixResult RunMatrix(const Scenario& scenario, const ExperimentConfig& cfg);

enum class SweepAxis { kWindow, kAttackers };
std::string_view ToString(SweepAxis axis);
std::optional<SweepAxis> ParseSweepAxis(std::string_view name);

struct SweepRow {
  double axis_value = 0.0;
  AttackStrategy attack = AttackStrategy::kRandom;
  DefenseStrategy defense = DefenseStrategy::kShortest;
  // nullopt for the row pooling every seed.
  std::optional<Seed> seed;
  RoundRecord record;
  // Per courier tour times, in fleet order.
  std::vector<double> tour_times;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kWindow;
  std::vector<SweepRow> rows;
};

// Window axis: routes are fixed per (defense, seed) and replayed under each
// multiplier. Attackers axis: one plan per k; with cfg.nested_plans every k
// takes a prefix of the same selection order, so A_k is a subset of A_k'
// whenever k <= k'.
SweepResult RunSweep(const Scenario& scenario, const ExperimentConfig& cfg,
                     SweepAxis axis);

// Attack seed used for one round. Nested plans share it across k.
Seed AttackSeed(Seed round_seed, int k, bool nested);

struct Reports {
  std::string command;
  std::optional<MatrixResult> matrix;
  std::optional<SweepResult> window;
  std::optional<SweepResult> attackers;
};

// Writes payoff_matrix.csv, equilibria.csv, sweep_window.csv,
// sweep_attackers.csv, critical_delays.csv and manifest.txt. Files with no
// data carry only their header.
void EmitReports(const Reports& reports, const ExperimentConfig& cfg,
                 const std::filesystem::path& output_dir);

}  // namespace ambush

#endif  // AMBUSH_EXPERIMENT_H_
