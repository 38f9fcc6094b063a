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

#include "ambush/experiment.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ambush/errors.h"
#include "fixtures.h"

namespace ambush {
namespace {

namespace fs = std::filesystem;

ExperimentConfig Parse(const std::string& text, const fs::path& base = "/b") {
  std::istringstream in(text);
  return ReadConfig(in, "test.cfg", base);
}

// Small two-block city with a generated fleet.
ExperimentConfig SmallConfig() {
  return Parse(
      "city.kind = two_cluster\ncity.rows = 4\ncity.cols = 4\n"
      "city.bridges = 2\nfleet.couriers = 6\nfleet.stops = 2\n"
      "fleet.window_s = 300\nfleet.cross_zones = true\nk = 3\n"
      "attacks = random, betweenness\ndefenses = shortest, mixnet\n"
      "seeds = 1, 2, 3\n");
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

int Lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ambush_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(ReadConfig, ParsesKeysCommentsAndPaths) {
  const ExperimentConfig cfg = Parse(
      "# a comment\n\n"
      "network.nodes = data/n.csv\n"
      "network.edges = /abs/e.csv   \n"
      "jobcards = cards.csv\n"
      "attacks = botgrep,eigen_c\n"
      "defenses = mixnet\n"
      "k = 12\nM = 300\n"
      "window_multipliers = 1, 1.5, 3.5\n"
      "attacker_counts = 1,2\n"
      "seeds = 7\n"
      "nested_plans = true\n"
      "epsilon = 1e-7\n");
  EXPECT_EQ(cfg.nodes_path, fs::path("/b/data/n.csv"));
  EXPECT_EQ(cfg.edges_path, fs::path("/abs/e.csv"));
  EXPECT_EQ(cfg.jobcards_path, fs::path("/b/cards.csv"));
  EXPECT_EQ(cfg.attacks,
            (std::vector<AttackStrategy>{AttackStrategy::kBotgrep,
                                         AttackStrategy::kEigenCentrality}));
  EXPECT_EQ(cfg.defenses,
            (std::vector<DefenseStrategy>{DefenseStrategy::kMixnet}));
  EXPECT_EQ(cfg.k, 12);
  EXPECT_EQ(cfg.ambush_delay, 300);
  EXPECT_EQ(cfg.window_multipliers, (std::vector<double>{1, 1.5, 3.5}));
  EXPECT_EQ(cfg.attacker_counts, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.seeds, (std::vector<Seed>{7}));
  EXPECT_TRUE(cfg.nested_plans);
  EXPECT_EQ(cfg.epsilon, 1e-7);
  EXPECT_NO_THROW(ValidateConfig(cfg));
}

TEST(ReadConfig, Defaults) {
  const ExperimentConfig cfg;
  EXPECT_EQ(cfg.attacks.size(), 9u);
  EXPECT_EQ(cfg.defenses.size(), 3u);
  EXPECT_EQ(cfg.k, 30);
  EXPECT_EQ(cfg.ambush_delay, 600);
  EXPECT_EQ(cfg.seeds.size(), 10u);
  EXPECT_FALSE(cfg.nested_plans);
  EXPECT_EQ(cfg.epsilon, 1e-6);
}

TEST(ReadConfig, ReportsTheBadLine) {
  for (const auto& [text, line] :
       std::vector<std::pair<std::string, int>>{{"k = 3\nbogus = 1\n", 2},
                                                {"\nk = three\n", 2},
                                                {"k 3\n", 1},
                                                {"attacks = random,nope\n", 1},
                                                {"seeds = 1,,2\n", 1},
                                                {"nested_plans = maybe\n", 1},
                                                {"city.kind = hexagon\n", 1}}) {
    try {
      Parse(text);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

TEST(ValidateConfig, RejectsInconsistentSettings) {
  auto expect_invalid = [](const std::string& extra) {
    ExperimentConfig cfg = SmallConfig();
    std::istringstream in(extra);
    std::string line;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      SetConfigValue(&cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    EXPECT_THROW(ValidateConfig(cfg), ValidationError) << extra;
  };
  EXPECT_NO_THROW(ValidateConfig(SmallConfig()));
  expect_invalid("k=0");
  expect_invalid("window_multipliers=1,0.5");
  expect_invalid("attacker_counts=0");
  expect_invalid("workers=0");
  expect_invalid("M=0");
  expect_invalid("jobcards=x.csv");
  expect_invalid("network.nodes=n.csv");
  expect_invalid("synth.base_jobcards=x.csv");
  ExperimentConfig none;
  EXPECT_THROW(ValidateConfig(none), ValidationError);
}

TEST(ConfigHash, TracksResultsNotRunSettings) {
  const ExperimentConfig base = SmallConfig();
  ExperimentConfig run = base;
  SetConfigValue(&run, "output_dir", "/elsewhere");
  SetConfigValue(&run, "workers", "8");
  EXPECT_EQ(ConfigHash(run), ConfigHash(base));
  EXPECT_EQ(CanonicalConfig(run), CanonicalConfig(base));
  for (const auto& [key, value] :
       std::vector<std::pair<std::string, std::string>>{
           {"k", "4"},
           {"seeds", "1,2"},
           {"M", "601"},
           {"city.bridges", "3"},
           {"fleet.seed", "2"},
           {"nested_plans", "true"},
           {"attacks", "betweenness,random"}}) {
    ExperimentConfig changed = base;
    SetConfigValue(&changed, key, value);
    EXPECT_NE(ConfigHash(changed), ConfigHash(base)) << key;
  }
  const std::string canon = CanonicalConfig(base);
  EXPECT_EQ(canon.find("output_dir"), std::string::npos);
  EXPECT_EQ(canon.find("workers"), std::string::npos);
}

TEST(ConfigKeysHelp, MentionsEveryKeyFamily) {
  const std::string help = ConfigKeysHelp();
  for (const char* key :
       {"network.nodes", "city.kind", "fleet.couriers", "synth.tolerance",
        "attacks", "window_multipliers", "nested_plans", "workers"}) {
    EXPECT_NE(help.find(key), std::string::npos) << key;
  }
}

TEST(LoadScenario, GeneratedCityAndFleet) {
  const Scenario s = LoadScenario(SmallConfig());
  EXPECT_EQ(s.net.num_nodes(), 32);
  EXPECT_EQ(s.fleet.size(), 6u);
  EXPECT_TRUE(s.synth_audit.empty());
}

TEST(LoadScenario, FilesAndSynthesis) {
  const fs::path dir = TempDir("scenario");
  fs::create_directories(dir);
  const Scenario base = LoadScenario(SmallConfig());
  SaveNetwork(base.net, dir / "nodes.csv", dir / "edges.csv");
  {
    std::ofstream out(dir / "cards.csv");
    WriteJobCards(base.fleet, out);
  }
  const ExperimentConfig files = Parse(
      "network.nodes = nodes.csv\nnetwork.edges = edges.csv\n"
      "jobcards = cards.csv\n",
      dir);
  const Scenario loaded = LoadScenario(files);
  EXPECT_EQ(loaded.net, base.net);
  EXPECT_EQ(loaded.fleet.size(), base.fleet.size());

  const ExperimentConfig synth = Parse(
      "city.kind = grid\ncity.rows = 8\ncity.cols = 8\n"
      "city.edge_time_s = 20\nsynth.base_nodes = nodes.csv\n"
      "synth.base_edges = edges.csv\nsynth.base_jobcards = cards.csv\n",
      dir);
  const Scenario moved = LoadScenario(synth);
  EXPECT_EQ(moved.fleet.size(), base.fleet.size());
  EXPECT_EQ(moved.synth_audit.size(), 12u);
  fs::remove_all(dir);
}

TEST(LoadScenario, MissingFileIsAnError) {
  const ExperimentConfig cfg = Parse(
      "network.nodes = nope.csv\nnetwork.edges = nope2.csv\njobcards = c\n",
      TempDir("missing"));
  EXPECT_THROW(LoadScenario(cfg), Error);
}

TEST(RunMatrix, CellsAreRounds) {
  const ExperimentConfig cfg = SmallConfig();
  const Scenario s = LoadScenario(cfg);
  const MatrixResult m = RunMatrix(s, cfg);
  ASSERT_EQ(m.payoff.num_rows(), 2);
  ASSERT_EQ(m.payoff.num_cols(), 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(m.payoff.rounds[i][j][k].late_fraction,
                  RunRound(s.net, s.fleet, cfg.attacks[i], cfg.defenses[j],
                           cfg.k, cfg.ambush_delay, cfg.seeds[k])
                      .late_fraction);
      }
    }
  }
  EXPECT_EQ(m.pure, FindPureNash(m.payoff.mean));
  EXPECT_LE(m.mixed.epsilon, cfg.epsilon);
}

TEST(RunSweep, UnitWindowMatchesTheMatrix) {
  ExperimentConfig cfg = SmallConfig();
  SetConfigValue(&cfg, "window_multipliers", "1.0");
  const Scenario s = LoadScenario(cfg);
  const MatrixResult m = RunMatrix(s, cfg);
  const SweepResult sweep = RunSweep(s, cfg, SweepAxis::kWindow);
  // Per (attack, defense): one row per seed and a pooled row.
  ASSERT_EQ(sweep.rows.size(), 2u * 2u * 4u);
  for (const SweepRow& row : sweep.rows) {
    if (!row.seed) continue;
    const auto a =
        std::find(cfg.attacks.begin(), cfg.attacks.end(), row.attack) -
        cfg.attacks.begin();
    const auto d =
        std::find(cfg.defenses.begin(), cfg.defenses.end(), row.defense) -
        cfg.defenses.begin();
    const auto k = std::find(cfg.seeds.begin(), cfg.seeds.end(), *row.seed) -
                   cfg.seeds.begin();
    const RoundMetrics& want = m.payoff.rounds[a][d][k];
    EXPECT_EQ(row.record.metrics.late_fraction, want.late_fraction);
    EXPECT_EQ(row.record.metrics.mean_tour_time, want.mean_tour_time);
    EXPECT_EQ(row.record.metrics.total_ambushes, want.total_ambushes);
  }
}

TEST(RunSweep, WindowRowsAreMonotone) {
  ExperimentConfig cfg = SmallConfig();
  SetConfigValue(&cfg, "window_multipliers", "1, 1.5, 2, 3.5");
  SetConfigValue(&cfg, "attacks", "random,degree,infomap,eigen_mod");
  SetConfigValue(&cfg, "defenses", "shortest,random_walk,disjoint,inverse");
  const SweepResult sweep =
      RunSweep(LoadScenario(cfg), cfg, SweepAxis::kWindow);
  for (const SweepRow& row : sweep.rows) {
    for (const SweepRow& other : sweep.rows) {
      if (other.attack == row.attack && other.defense == row.defense &&
          other.seed == row.seed && other.axis_value > row.axis_value) {
        EXPECT_LE(other.record.metrics.late_fraction,
                  row.record.metrics.late_fraction);
      }
    }
  }
}

TEST(RunSweep, NestedPlansGiveMonotoneTours) {
  ExperimentConfig cfg = SmallConfig();
  SetConfigValue(&cfg, "attacker_counts", "1, 3, 5, 10, 20");
  SetConfigValue(&cfg, "nested_plans", "true");
  SetConfigValue(&cfg, "attacks", "random,botgrep");
  const SweepResult sweep =
      RunSweep(LoadScenario(cfg), cfg, SweepAxis::kAttackers);
  int compared = 0;
  for (const SweepRow& row : sweep.rows) {
    for (const SweepRow& other : sweep.rows) {
      if (!row.seed || other.attack != row.attack ||
          other.defense != row.defense || other.seed != row.seed ||
          other.axis_value <= row.axis_value) {
        continue;
      }
      for (std::size_t c = 0; c < row.tour_times.size(); ++c) {
        EXPECT_GE(other.tour_times[c], row.tour_times[c]);
      }
      EXPECT_GE(other.record.metrics.p95_tour_time,
                row.record.metrics.p95_tour_time);
      ++compared;
    }
  }
  EXPECT_GT(compared, 0);
  EXPECT_EQ(AttackSeed(4, 1, true), AttackSeed(4, 20, true));
  EXPECT_NE(AttackSeed(4, 1, false), AttackSeed(4, 20, false));
}

TEST(RunSweep, RejectsBudgetsBeyondTheNetwork) {
  ExperimentConfig cfg = SmallConfig();
  SetConfigValue(&cfg, "attacker_counts", "1, 1000");
  EXPECT_THROW(RunSweep(LoadScenario(cfg), cfg, SweepAxis::kAttackers),
               ValidationError);
}

TEST(EmitReports, EmptyRunsWriteHeaders) {
  const fs::path dir = TempDir("empty_reports");
  Reports reports;
  reports.command = "none";
  EmitReports(reports, SmallConfig(), dir);
  for (const char* file :
       {"payoff_matrix.csv", "equilibria.csv", "round_metrics.csv",
        "critical_delays.csv", "sweep_window.csv", "sweep_attackers.csv"}) {
    EXPECT_EQ(Lines(Slurp(dir / file)), 1) << file;
  }
  const std::string manifest = Slurp(dir / "manifest.txt");
  EXPECT_NE(manifest.find("command=none\n"), std::string::npos);
  EXPECT_NE(manifest.find("seeds=1,2,3\n"), std::string::npos);
  fs::remove_all(dir);
}

TEST(EmitReports, MatrixFilesHaveOneRowPerCell) {
  const fs::path dir = TempDir("matrix_reports");
  const ExperimentConfig cfg = SmallConfig();
  Reports reports;
  reports.command = "matrix";
  reports.matrix = RunMatrix(LoadScenario(cfg), cfg);
  EmitReports(reports, cfg, dir);
  EXPECT_EQ(Lines(Slurp(dir / "payoff_matrix.csv")), 1 + 4);
  EXPECT_EQ(Lines(Slurp(dir / "critical_delays.csv")), 1 + 4);
  EXPECT_EQ(Lines(Slurp(dir / "round_metrics.csv")), 1 + 4 * 3);
  EXPECT_EQ(Slurp(dir / "critical_delays.csv")
                .rfind("attack,defense,crit_frac_of_late,late_frac,"
                       "total_late,total_critical\n",
                       0),
            0u);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace ambush
