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

// Command-line front end: experiment runs, single rounds and data tools.

#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ambush/attack.h"
#include "ambush/centrality.h"
#include "ambush/community.h"
#include "ambush/defense.h"
#include "ambush/errors.h"
#include "ambush/experiment.h"
#include "ambush/io.h"
#include "ambush/simulation.h"
#include "ambush/synth.h"

namespace fs = std::filesystem;
using namespace ambush;

namespace {

struct Globals {
  std::string config;
  std::vector<std::string> sets;
  std::optional<Seed> seed;
  std::string out;
  bool nested = false;
  std::optional<int> workers;
};

ExperimentConfig BuildConfig(const Globals& g) {
  ExperimentConfig cfg =
      g.config.empty() ? ExperimentConfig{} : LoadConfig(g.config);
  for (const std::string& kv : g.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--set", 0, "expected KEY=VALUE, got '" + kv + "'");
    }
    SetConfigValue(&cfg, io::Trim(kv.substr(0, eq)), kv.substr(eq + 1), "--set",
                   0, fs::current_path());
  }
  if (!g.out.empty()) cfg.output_dir = g.out;
  if (g.nested) cfg.nested_plans = true;
  if (g.workers) cfg.workers = *g.workers;
  return cfg;
}

Seed RoundSeed(const Globals& g, const ExperimentConfig& cfg) {
  return g.seed ? *g.seed : cfg.seeds.front();
}

AttackStrategy NeedAttack(const std::string& name) {
  auto a = ParseAttackStrategy(name);
  if (!a) throw DomainError("unknown attack strategy '" + name + "'");
  return *a;
}

DefenseStrategy NeedDefense(const std::string& name) {
  auto d = ParseDefenseStrategy(name);
  if (!d) throw DomainError("unknown defense strategy '" + name + "'");
  return *d;
}

void WriteTours(std::span<const JobCard> fleet,
                std::span<const TourResult> tours, const fs::path& dir) {
  auto out = io::OpenForWrite(dir / "tours.csv");
  out << "courier_id,seq,node_id,window_start_s,window_end_s,arrival_s,"
         "status\n";
  for (std::size_t c = 0; c < fleet.size(); ++c) {
    for (std::size_t i = 0; i < fleet[c].stops.size(); ++i) {
      const Stop& s = fleet[c].stops[i];
      out << fleet[c].courier_id << ',' << i + 1 << ',' << s.node_id << ','
          << io::FormatDouble(s.window_start) << ','
          << io::FormatDouble(s.window_end) << ','
          << io::FormatDouble(tours[c].arrivals[i]) << ','
          << ToString(tours[c].status[i]) << '\n';
    }
  }
  auto summary = io::OpenForWrite(dir / "tour_summary.csv");
  summary << "courier_id,tour_s,driving_s,ambushes,failed\n";
  for (const TourResult& t : tours) {
    summary << t.courier_id << ',' << io::FormatDouble(t.tour_time) << ','
            << io::FormatDouble(t.driving_time) << ',' << t.ambush_count << ','
            << (t.failed ? 1 : 0) << '\n';
  }
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
}

// ---- subcommands ----------------------------------------------------------

struct SimulateArgs {
  std::string attack = "betweenness";
  std::string defense = "shortest";
  std::optional<int> k;
  double window_mult = 1.0;
  std::string routes;
  std::string plan;
};

void CmdSimulate(const Globals& g, const SimulateArgs& a) {
  const ExperimentConfig cfg = BuildConfig(g);
  const Scenario sc = LoadScenario(cfg);
  const Seed seed = RoundSeed(g, cfg);
  const int k = a.k.value_or(cfg.k);
  const auto fleet = ApplyWindowMultiplier(sc.fleet, a.window_mult);

  AttackPlan plan;
  std::string attack_name;
  if (!a.plan.empty()) {
    auto in = io::OpenForRead(a.plan);
    plan.edges = ReadEdgeIds(sc.net, in, a.plan);
    attack_name = "file";
  } else {
    plan = SelectAttackEdges(sc.net, NeedAttack(a.attack), k,
                             AttackSeed(seed, k, true));
    attack_name = a.attack;
  }

  RoundOutcome outcome;
  std::string defense_name;
  if (!a.routes.empty()) {
    auto in = io::OpenForRead(a.routes);
    const auto routes = ReadRoutes(sc.net, fleet, in, a.routes);
    outcome =
        ReplayRound(sc.net, fleet, routes, plan, cfg.ambush_delay, cfg.workers);
    defense_name = "replay";
  } else {
    const RoutePlanner planner(sc.net);
    outcome = PlayRound(planner, fleet, plan, NeedDefense(a.defense),
                        cfg.ambush_delay, seed, cfg.workers);
    defense_name = a.defense;
  }

  MakeDir(cfg.output_dir);
  {
    auto out = io::OpenForWrite(cfg.output_dir / "round_metrics.csv");
    out << kRoundMetricsHeader << ",seed\n";
    WriteRoundRecord(
        RoundRecord{attack_name, defense_name,
                    static_cast<int>(plan.edges.size()), cfg.ambush_delay,
                    a.window_mult, outcome.metrics},
        out);
    out << ',' << seed << '\n';
  }
  {
    auto out = io::OpenForWrite(cfg.output_dir / "routes.csv");
    WriteRoutes(sc.net, outcome.routes, out);
  }
  {
    auto out = io::OpenForWrite(cfg.output_dir / "attack_plan.csv");
    WriteEdgeIds(sc.net, plan.edges, out);
  }
  WriteTours(fleet, outcome.tours, cfg.output_dir);
  const RoundMetrics& m = outcome.metrics;
  fmt::print("late {}/{} ({:.4f}), critical {}, ambushes {}, failed tours {}\n",
             m.total_late, m.total_deliveries, m.late_fraction,
             m.total_critical, m.total_ambushes, m.failed_tours);
}

void CmdMatrix(const Globals& g) {
  ExperimentConfig cfg = BuildConfig(g);
  if (g.seed) cfg.seeds = {*g.seed};
  const Scenario sc = LoadScenario(cfg);
  Reports reports;
  reports.command = "matrix";
  reports.matrix = RunMatrix(sc, cfg);
  EmitReports(reports, cfg, cfg.output_dir);
  const auto& r = *reports.matrix;
  fmt::print("{}x{} matrix, {} pure equilibria, game value {} (epsilon {})\n",
             r.payoff.num_rows(), r.payoff.num_cols(), r.pure.size(),
             io::FormatDouble(r.mixed.value),
             io::FormatDouble(r.mixed.epsilon));
}

void CmdSweep(const Globals& g, const std::string& axis_name) {
  ExperimentConfig cfg = BuildConfig(g);
  if (g.seed) cfg.seeds = {*g.seed};
  const auto axis = ParseSweepAxis(axis_name);
  if (!axis) throw DomainError("unknown sweep axis '" + axis_name + "'");
  const Scenario sc = LoadScenario(cfg);
  Reports reports;
  reports.command = "sweep " + axis_name;
  auto result = RunSweep(sc, cfg, *axis);
  const std::size_t rows = result.rows.size();
  (*axis == SweepAxis::kWindow ? reports.window : reports.attackers) =
      std::move(result);
  EmitReports(reports, cfg, cfg.output_dir);
  fmt::print("{} sweep: {} rows\n", axis_name, rows);
}

void CmdAttack(const Globals& g, const std::string& strategy,
               std::optional<int> k_opt) {
  const ExperimentConfig cfg = BuildConfig(g);
  const Scenario sc = LoadScenario(cfg);
  const Seed seed = RoundSeed(g, cfg);
  const int k = k_opt.value_or(cfg.k);
  const AttackPlan plan = SelectAttackEdges(sc.net, NeedAttack(strategy), k,
                                            AttackSeed(seed, k, true));
  MakeDir(cfg.output_dir);
  auto out = io::OpenForWrite(cfg.output_dir / "attack_plan.csv");
  WriteEdgeIds(sc.net, plan.edges, out);
  fmt::print("{} roads selected by {}", plan.edges.size(), strategy);
  if (IsPartitionBased(plan.strategy)) {
    fmt::print(" (natural cutset {})", plan.cutset_size);
  }
  fmt::print("\n");
}

void CmdAnalyze(const Globals& g) {
  const ExperimentConfig cfg = BuildConfig(g);
  // Only the network is needed; a fleet source is optional here.
  RoadNetwork net = [&] {
    if (cfg.city) return GenerateCity(*cfg.city, cfg.city_seed).net;
    if (cfg.nodes_path.empty() || cfg.edges_path.empty()) {
      throw ValidationError(
          "config: network.nodes and network.edges (or city.*) are required");
    }
    return LoadNetwork(cfg.nodes_path, cfg.edges_path);
  }();
  const Seed seed = AttackSeed(RoundSeed(g, cfg), cfg.k, true);
  CentralityOptions copt;
  copt.workers = cfg.workers;
  const auto deg = Centrality(net, CentralityKind::kDegree, copt);
  const auto btw = Centrality(net, CentralityKind::kBetweenness, copt);
  const auto eig = Centrality(net, CentralityKind::kEigenvector, copt);
  const auto inverse = InverseCentralityScores(net, cfg.workers);

  MakeDir(cfg.output_dir);
  {
    auto out = io::OpenForWrite(cfg.output_dir / "node_centrality.csv");
    out << "node_id,degree,betweenness,eigenvector\n";
    for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
      out << net.node(v).id << ',' << io::FormatDouble(deg.node_scores[v])
          << ',' << io::FormatDouble(btw.node_scores[v]) << ','
          << io::FormatDouble(eig.node_scores[v]) << '\n';
    }
  }
  {
    auto out = io::OpenForWrite(cfg.output_dir / "edge_centrality.csv");
    out << "edge_id,betweenness,eigenvector,inverse_score\n";
    for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
      out << net.edge(e).id << ',' << io::FormatDouble(btw.edge_scores[e])
          << ',' << io::FormatDouble(eig.edge_scores[e]) << ','
          << io::FormatDouble(inverse[e]) << '\n';
    }
  }
  {
    auto out = io::OpenForWrite(cfg.output_dir / "graph_summary.csv");
    out << "nodes,edges,eigenvalue\n"
        << net.num_nodes() << ',' << net.num_edges() << ','
        << io::FormatDouble(eig.eigenvalue) << '\n';
  }
  struct Method {
    const char* name;
    Partition part;
  };
  std::vector<Method> methods;
  methods.push_back(
      {"infomap", FlowPartition(net, {}, DeriveSeed(seed, "infomap"))});
  methods.push_back(
      {"botgrep", MixingPartition(net, {}, DeriveSeed(seed, "botgrep"))});
  methods.push_back({"greedy_mod", AgglomerativeModularity(
                                       net, AgglomerativeVariant::kGreedy)});
  methods.push_back(
      {"hierarchical_mod",
       AgglomerativeModularity(net, AgglomerativeVariant::kHierarchical)});
  methods.push_back({"eigen_mod", SpectralBisect(net)});
  auto summary = io::OpenForWrite(cfg.output_dir / "partitions.csv");
  summary << "method,communities,modularity,max_conductance,cutset_size\n";
  for (const Method& m : methods) {
    const double cond = m.part.num_communities() > 1
                            ? MaxCommunityConductance(net, m.part)
                            : 0.0;
    summary << m.name << ',' << m.part.num_communities() << ','
            << io::FormatDouble(Modularity(net, m.part)) << ','
            << io::FormatDouble(cond) << ','
            << PartitionCutset(net, m.part).size() << '\n';
    auto out = io::OpenForWrite(cfg.output_dir /
                                fmt::format("partition_{}.csv", m.name));
    WritePartition(net, m.part, out);
  }
  fmt::print("{} nodes, {} roads analysed\n", net.num_nodes(), net.num_edges());
}

struct SolveArgs {
  std::string payoff;
  std::optional<double> epsilon;
};

// Equilibria of a stored or hand-written payoff table.
void CmdSolve(const Globals& g, const SolveArgs& a) {
  const ExperimentConfig cfg = BuildConfig(g);
  auto in = io::OpenForRead(a.payoff);
  const LabeledMatrix t = ReadPayoffTable(in, a.payoff);
  const auto pure = FindPureNash(t.values);
  const Equilibrium solved =
      SolveZeroSum(t.values, a.epsilon.value_or(cfg.epsilon));
  const auto equilibria = CollectEquilibria(t.values, pure, solved);

  MakeDir(cfg.output_dir);
  {
    auto out = io::OpenForWrite(cfg.output_dir / "equilibria.csv");
    WriteEquilibria(t.rows, t.cols, equilibria, out);
  }
  {
    const BestResponsePath path = BestResponseCycle(t.values, {0, 0});
    auto out = io::OpenForWrite(cfg.output_dir / "best_response.csv");
    out << "step,attack,defense,in_cycle\n";
    for (std::size_t i = 0; i < path.cells.size(); ++i) {
      const auto [r, c] = path.cells[i];
      out << i << ',' << t.rows[r] << ',' << t.cols[c] << ','
          << (static_cast<int>(i) >= path.cycle_start ? 1 : 0) << '\n';
    }
  }
  fmt::print("{}x{} game, {} pure equilibria, value {} (epsilon {})\n",
             t.rows.size(), t.cols.size(), pure.size(),
             io::FormatDouble(solved.value), io::FormatDouble(solved.epsilon));
}

void CmdSynth(const Globals& g) {
  ExperimentConfig cfg = BuildConfig(g);
  if (g.seed) cfg.synth_seed = *g.seed;
  if (cfg.synth_base_jobcards.empty()) {
    throw ValidationError(
        "config: synth.base_nodes, synth.base_edges and synth.base_jobcards "
        "are required");
  }
  const Scenario sc = LoadScenario(cfg);
  MakeDir(cfg.output_dir);
  {
    auto out = io::OpenForWrite(cfg.output_dir / "jobcards.csv");
    WriteJobCards(sc.fleet, out);
  }
  {
    auto out = io::OpenForWrite(cfg.output_dir / "synth_audit.csv");
    WriteTraceAudit(sc.synth_audit, out);
  }
  fmt::print("{} cards, {} legs synthesized\n", sc.fleet.size(),
             sc.synth_audit.size());
}

void CmdGenCity(const Globals& g) {
  ExperimentConfig cfg = BuildConfig(g);
  if (g.seed) {
    cfg.city_seed = *g.seed;
    cfg.fleet_seed = *g.seed;
  }
  if (!cfg.city) throw ValidationError("config: city.kind is required");
  const City city = GenerateCity(*cfg.city, cfg.city_seed);
  MakeDir(cfg.output_dir);
  SaveNetwork(city.net, cfg.output_dir / "nodes.csv",
              cfg.output_dir / "edges.csv");
  if (cfg.fleet) {
    const auto fleet = GenerateFleet(city, *cfg.fleet, cfg.fleet_seed);
    auto out = io::OpenForWrite(cfg.output_dir / "jobcards.csv");
    WriteJobCards(fleet, out);
  }
  fmt::print("{} city: {} nodes, {} roads\n", ToString(cfg.city->kind),
             city.net.num_nodes(), city.net.num_edges());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambush: DoS interdiction games on road networks"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "experiment config file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", g.sets, "override one config key (KEY=VALUE)");
  app.add_option("--seed", g.seed,
                 "round seed for simulate/attack/analyze; the only seed for "
                 "matrix/sweep; generator seed for synth/gen-city");
  app.add_option("--out", g.out, "output directory (overrides output_dir)");
  app.add_flag("--nested-plans", g.nested,
               "attacker sweep: every k takes a prefix of one selection order");
  app.add_option("--workers", g.workers, "worker threads")
      ->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "play one round");
  simulate->add_option("--attack", sim.attack, "attack strategy");
  simulate->add_option("--defense", sim.defense, "defense strategy");
  simulate->add_option("--k", sim.k, "attacker count (default: config k)");
  simulate->add_option("--window-mult", sim.window_mult, "window multiplier");
  simulate
      ->add_option("--routes", sim.routes, "replay routes from a route export")
      ->check(CLI::ExistingFile);
  simulate->add_option("--plan", sim.plan, "attack plan edge-id file")
      ->check(CLI::ExistingFile);

  auto* matrix = app.add_subcommand("matrix", "payoff matrix and equilibria");

  std::string axis;
  auto* sweep = app.add_subcommand("sweep", "window or attacker-count sweep");
  sweep->add_option("--axis", axis, "window | attackers")
      ->required()
      ->check(CLI::IsMember({"window", "attackers"}));

  std::string attack_strategy;
  std::optional<int> attack_k;
  auto* attack = app.add_subcommand("attack", "select attacked roads");
  attack->add_option("--strategy", attack_strategy, "attack strategy")
      ->required();
  attack->add_option("--k", attack_k, "attacker count (default: config k)");

  auto* analyze = app.add_subcommand("analyze", "centralities and partitions");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "equilibria of a payoff table");
  solve
      ->add_option("--payoff", solve_args.payoff,
                   "table with header attack,defense,payoff_mean")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--epsilon", solve_args.epsilon,
                    "certified tolerance (default: config epsilon)");
  auto* synth = app.add_subcommand("synth", "move job cards onto a network");
  auto* gen_city = app.add_subcommand("gen-city", "generate a city and fleet");

  // Set last so that subcommand help stays short.
  app.footer("Config keys (key = value, lists comma-separated):\n" +
             ConfigKeysHelp());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) CmdSimulate(g, sim);
    if (*matrix) CmdMatrix(g);
    if (*sweep) CmdSweep(g, axis);
    if (*attack) CmdAttack(g, attack_strategy, attack_k);
    if (*analyze) CmdAnalyze(g);
    if (*solve) CmdSolve(g, solve_args);
    if (*synth) CmdSynth(g);
    if (*gen_city) CmdGenCity(g);
  } catch (const std::exception& e) {
    std::cerr << "ambush: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
