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

// End-to-end acceptance run. Every criterion drives the `ambush` command
// line tool and checks the files it writes; library code is used only to
// load fixtures for the brute-force oracles. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ambush/road_network.h"
#include "fixtures.h"
#include "oracles.h"

namespace fs = std::filesystem;

namespace {

// ---- pinned tolerances and time limits -----------------------------------

// Betweenness and modularity are "exact": equal up to rounding.
constexpr double kExactTol = 1e-9;
constexpr double kEigenResidualTol = 1e-8;
constexpr double kSolverEps = 1e-6;
constexpr double kDeclaredSynthTolerance = 0.10;
constexpr double kAmbushDelay = 600.0;
constexpr double kMinAttackRatio = 2.0;
constexpr double kMaxDefenseRatio = 0.5;

constexpr double kLimitOracles = 10;
constexpr double kLimitPlantedCut = 30;
constexpr double kLimitSolver = 1;
constexpr double kLimitHeadline = 300;
constexpr double kLimitWindow = 300;
constexpr double kLimitAttackers = 120;

// ---- helpers ---------------------------------------------------------------

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

const fs::path kWork = AMBUSH_ACCEPTANCE_WORK_DIR;
const fs::path kData = AMBUSH_TEST_DATA_DIR;

std::string Quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI; its output goes to <out>.log next to the output directory.
void Cli(const std::vector<std::string>& args, const fs::path& out) {
  fs::create_directories(out.parent_path());
  std::string cmd = Quote(AMBUSH_CLI);
  for (const std::string& a : args) cmd += " " + Quote(a);
  cmd += " --out " + Quote(out.string());
  const fs::path log = out.string() + ".log";
  cmd += " > " + Quote(log.string()) + " 2>&1";
  if (std::system(cmd.c_str()) != 0) {
    std::ifstream in(log);
    std::string text{std::istreambuf_iterator<char>(in), {}};
    throw Failure("command failed: " + cmd + "\n" + text);
  }
}

using Row = std::map<std::string, std::string>;

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<Row> ReadCsv(const fs::path& file) {
  std::ifstream in(file);
  Require(static_cast<bool>(in), "missing " + file.string());
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), "empty " + file.string());
  const auto header = Split(line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = Split(line);
    Require(f.size() == header.size(), "ragged row in " + file.string());
    Row r;
    for (std::size_t i = 0; i < f.size(); ++i) r[header[i]] = f[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

double Num(const Row& r, const std::string& key) {
  const auto it = r.find(key);
  Require(it != r.end(), "missing column " + key);
  return std::stod(it->second);
}

bool Close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

void WriteFile(const fs::path& file, const std::string& text) {
  fs::create_directories(file.parent_path());
  std::ofstream(file) << text;
}

std::string Slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string SeedList(int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += (i > 1 ? "," : "") + std::to_string(i);
  return s;
}

// Plain Dijkstra over an exported network: node id -> travel time.
class Roads {
 public:
  Roads(const fs::path& edges_file) {
    for (const Row& e : ReadCsv(edges_file)) {
      const double t = Num(e, "length_m") / Num(e, "speed_mps");
      adj_[e.at("u")].push_back({e.at("v"), t});
      adj_[e.at("v")].push_back({e.at("u"), t});
    }
  }

  double Time(const std::string& from, const std::string& to) {
    auto it = cache_.find(from);
    if (it == cache_.end()) it = cache_.emplace(from, Run(from)).first;
    const auto d = it->second.find(to);
    Require(d != it->second.end(), "unreachable " + to);
    return d->second;
  }

 private:
  std::map<std::string, double> Run(const std::string& src) {
    std::map<std::string, double> dist{{src, 0.0}};
    using Item = std::pair<double, std::string>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj_[u]) {
        const auto it = dist.find(v);
        if (it == dist.end() || d + w < it->second) {
          dist[v] = d + w;
          pq.push({d + w, v});
        }
      }
    }
    return dist;
  }

  std::map<std::string, std::vector<std::pair<std::string, double>>> adj_;
  std::map<std::string, std::map<std::string, double>> cache_;
};

// ---- criteria --------------------------------------------------------------

std::string GraphOracles() {
  int graphs = 0;
  double worst_btw = 0, worst_res = 0, worst_q = 0;
  for (const std::string& name : ambush::testing::GraphFixtureNames()) {
    const ambush::RoadNetwork net = ambush::testing::LoadGraphFixture(name);
    if (net.num_nodes() > 12) continue;
    ++graphs;
    const fs::path out = kWork / "oracles" / name;
    const fs::path g = kData / "graphs";
    Cli({"analyze", "--set",
         "network.nodes=" + (g / (name + "_nodes.csv")).string(), "--set",
         "network.edges=" + (g / (name + "_edges.csv")).string()},
        out);
    const auto brute = ambush::testing::EnumerateBetweenness(net);

    const auto nodes = ReadCsv(out / "node_centrality.csv");
    Require(static_cast<int>(nodes.size()) == net.num_nodes(),
            name + ": node count");
    std::vector<double> eigvec(net.num_nodes());
    for (const Row& r : nodes) {
      const ambush::NodeIndex v = net.NodeAt(r.at("node_id"));
      const double b = Num(r, "betweenness");
      worst_btw = std::max(worst_btw, std::abs(b - brute.node[v]));
      Require(Close(b, brute.node[v], kExactTol),
              fmt::format("{}: node {} betweenness {} vs {}", name,
                          r.at("node_id"), b, brute.node[v]));
      eigvec[v] = Num(r, "eigenvector");
    }
    for (const Row& r : ReadCsv(out / "edge_centrality.csv")) {
      const ambush::EdgeIndex e = net.EdgeAt(r.at("edge_id"));
      const double b = Num(r, "betweenness");
      worst_btw = std::max(worst_btw, std::abs(b - brute.edge[e]));
      Require(Close(b, brute.edge[e], kExactTol),
              fmt::format("{}: edge {} betweenness {} vs {}", name,
                          r.at("edge_id"), b, brute.edge[e]));
    }

    const double lambda =
        Num(ReadCsv(out / "graph_summary.csv").at(0), "eigenvalue");
    const double res = ambush::testing::EigenResidual(net, eigvec, lambda);
    worst_res = std::max(worst_res, res);
    Require(res <= kEigenResidualTol,
            fmt::format("{}: eigenvector residual {}", name, res));
    Require(*std::max_element(eigvec.begin(), eigvec.end()) == 1.0,
            name + ": eigenvector not scaled to unit maximum");

    for (const Row& p : ReadCsv(out / "partitions.csv")) {
      const std::string method = p.at("method");
      std::vector<int> labels(net.num_nodes(), -1);
      for (const Row& r : ReadCsv(out / ("partition_" + method + ".csv"))) {
        labels[net.NodeAt(r.at("node_id"))] = std::stoi(r.at("community"));
      }
      Require(std::count(labels.begin(), labels.end(), -1) == 0,
              name + "/" + method + ": unlabelled node");
      const double q = Num(p, "modularity");
      const double want = ambush::testing::DoubleSumModularity(net, labels);
      worst_q = std::max(worst_q, std::abs(q - want));
      Require(Close(q, want, kExactTol),
              fmt::format("{}/{}: modularity {} vs {}", name, method, q, want));
    }
  }
  Require(graphs >= 5, "too few fixtures");
  return fmt::format("{} graphs; max |dB| {:.1e}, residual {:.1e}, |dQ| {:.1e}",
                     graphs, worst_btw, worst_res, worst_q);
}

std::string PlantedCut() {
  const fs::path cfg = kWork / "planted" / "planted.cfg";
  WriteFile(cfg,
            "city.kind = two_cluster\ncity.rows = 4\ncity.cols = 4\n"
            "city.bridges = 2\nfleet.couriers = 4\n");
  Cli({"gen-city", "--config", cfg.string()}, kWork / "planted" / "city");
  // Blocks are told apart by their node-id prefix.
  std::set<std::string> bridges;
  for (const Row& e : ReadCsv(kWork / "planted" / "city" / "edges.csv")) {
    if (e.at("u")[0] != e.at("v")[0]) bridges.insert(e.at("edge_id"));
  }
  Require(bridges.size() == 2, "fixture should have 2 bridges");
  for (const char* s :
       {"infomap", "botgrep", "greedy_mod", "hierarchical_mod", "eigen_mod"}) {
    const fs::path out = kWork / "planted" / s;
    Cli({"attack", "--config", cfg.string(), "--strategy", s, "--k", "2"}, out);
    std::set<std::string> picked;
    for (const Row& r : ReadCsv(out / "attack_plan.csv")) {
      picked.insert(r.at("edge_id"));
    }
    Require(picked == bridges, std::string(s) + " missed the bridges");
  }
  return fmt::format(
      "5 partition attacks picked {{{}}}",
      fmt::format("{}, {}", *bridges.begin(), *std::next(bridges.begin())));
}

struct Solved {
  std::string kind;
  double value = 0;
  double epsilon = 0;
  std::vector<double> x, y;
};

std::vector<Solved> Solve(const std::string& name, const std::string& table) {
  const fs::path file = kWork / "solver" / (name + ".csv");
  WriteFile(file, table);
  Cli({"solve", "--payoff", file.string(), "--epsilon",
       fmt::format("{}", kSolverEps)},
      kWork / "solver" / name);
  std::vector<Solved> out;
  std::ifstream in(kWork / "solver" / name / "equilibria.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto f = Split(line);
    if (f[0] == "attacker") {
      out.back().x.push_back(std::stod(f[2]));
    } else if (f[0] == "defender") {
      out.back().y.push_back(std::stod(f[2]));
    } else {
      out.push_back({f[0], std::stod(f[1]), std::stod(f[2]), {}, {}});
    }
  }
  Require(!out.empty(), name + ": no equilibrium");
  return out;
}

void ExpectVector(const std::vector<double>& got,
                  const std::vector<double>& want, const std::string& what) {
  Require(got.size() == want.size(), what + ": size");
  for (std::size_t i = 0; i < got.size(); ++i) {
    Require(std::abs(got[i] - want[i]) <= kSolverEps,
            fmt::format("{}[{}] = {} vs {}", what, i, got[i], want[i]));
  }
}

std::string SolverOracles() {
  const std::string h = "attack,defense,payoff_mean\n";
  auto pennies = Solve("pennies", h + "a,x,1\na,y,-1\nb,x,-1\nb,y,1\n");
  Require(pennies.size() == 1 && pennies[0].kind == "mixed",
          "pennies: expected one mixed equilibrium");
  Require(std::abs(pennies[0].value) <= kSolverEps, "pennies: value");
  ExpectVector(pennies[0].x, {0.5, 0.5}, "pennies x");
  ExpectVector(pennies[0].y, {0.5, 0.5}, "pennies y");

  // v = (ad - bc) / (a + d - b - c) for [[a, b], [c, d]] = [[3, 1], [0, 2]].
  auto closed = Solve("closed_form", h + "a,x,3\na,y,1\nb,x,0\nb,y,2\n");
  Require(closed.size() == 1, "closed form: expected one equilibrium");
  Require(std::abs(closed[0].value - (3.0 * 2 - 1 * 0) / (3 + 2 - 1 - 0)) <=
              kSolverEps,
          "closed form: value");
  ExpectVector(closed[0].x, {0.5, 0.5}, "closed form x");
  ExpectVector(closed[0].y, {0.25, 0.75}, "closed form y");

  auto saddle = Solve("saddle", h + "a,x,3\na,y,1\nb,x,5\nb,y,2\n");
  Require(saddle.size() == 1 && saddle[0].kind == "pure",
          "saddle: expected the pure equilibrium only");
  Require(std::abs(saddle[0].value - 2) <= kSolverEps, "saddle: value");
  ExpectVector(saddle[0].x, {0, 1}, "saddle x");
  ExpectVector(saddle[0].y, {0, 1}, "saddle y");
  for (const auto* set : {&pennies, &closed, &saddle}) {
    Require(set->front().epsilon <= kSolverEps, "certified epsilon too large");
  }
  return fmt::format("pennies v={:.3g}, 2x2 v={:.7g}, saddle v={:.7g}",
                     pennies[0].value, closed[0].value, saddle[0].value);
}

std::string HeadlineFinding() {
  const fs::path out = kWork / "headline";
  Cli({"matrix", "--config", (kData / "bypass.cfg").string(), "--set",
       "attacks=betweenness,random", "--set", "defenses=shortest,mixnet",
       "--set", "seeds=" + SeedList(10), "--set", "k=30"},
      out);
  std::map<std::pair<std::string, std::string>, double> late;
  for (const Row& r : ReadCsv(out / "payoff_matrix.csv")) {
    Require(Num(r, "n") == 10, "expected 10 seeds per cell");
    late[{r.at("attack"), r.at("defense")}] = Num(r, "payoff_mean");
  }
  const double bs = late.at({"betweenness", "shortest"});
  const double rs = late.at({"random", "shortest"});
  const double bm = late.at({"betweenness", "mixnet"});
  const std::string detail = fmt::format(
      "betweenness/shortest {:.3f}, random/shortest {:.3f}, "
      "betweenness/mixnet {:.3f}",
      bs, rs, bm);
  Require(bs >= kMinAttackRatio * rs, "attack separation too small: " + detail);
  Require(bm <= kMaxDefenseRatio * bs,
          "defense separation too small: " + detail);
  return detail;
}

// Checks `value` along each (attack, defense, seed) series of a sweep file.
int CheckSeries(const fs::path& file, const std::string& axis,
                const std::vector<std::string>& metrics, bool increasing) {
  std::map<std::string, std::vector<std::pair<double, const Row*>>> series;
  const auto rows = ReadCsv(file);
  for (const Row& r : rows) {
    if (r.at("seed") == "all") continue;
    series[r.at("attack") + "/" + r.at("defense") + "/" + r.at("seed")]
        .push_back({Num(r, axis), &r});
  }
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < points.size(); ++i) {
      for (const std::string& m : metrics) {
        const double prev = Num(*points[i - 1].second, m);
        const double cur = Num(*points[i].second, m);
        Require(increasing ? cur >= prev : cur <= prev,
                fmt::format("{} {} goes from {} to {} at {}={}", key, m, prev,
                            cur, axis, points[i].first));
      }
    }
  }
  return static_cast<int>(series.size());
}

std::string WindowSweep() {
  int series = 0;
  double late_at_max = -1;
  for (const char* fixture : {"bypass", "no_bypass"}) {
    const fs::path out = kWork / "window" / fixture;
    Cli({"sweep", "--axis", "window", "--config",
         (kData / (std::string(fixture) + ".cfg")).string(), "--set",
         "window_multipliers=1,1.5,2,2.5,3,3.5", "--set", "attacks=all",
         "--set", "defenses=all", "--set", "seeds=" + SeedList(10)},
        out);
    series += CheckSeries(out / "sweep_window.csv", "window_mult",
                          {"late_frac"}, false);
    if (std::string(fixture) == "no_bypass") {
      for (const Row& r : ReadCsv(out / "sweep_window.csv")) {
        if (r.at("attack") == "betweenness" && r.at("defense") == "shortest" &&
            r.at("seed") == "all" && Num(r, "window_mult") == 3.5) {
          late_at_max = Num(r, "late_frac");
        }
      }
    }
  }
  Require(late_at_max > 0,
          fmt::format("no_bypass betweenness/shortest late fraction at 3.5x "
                      "is {}",
                      late_at_max));
  return fmt::format("{} series nonincreasing; no_bypass late at 3.5x {:.3f}",
                     series, late_at_max);
}

std::string AttackerSweep() {
  const fs::path out = kWork / "attackers";
  Cli({"sweep", "--axis", "attackers", "--nested-plans", "--config",
       (kData / "bypass.cfg").string(), "--set", "attacker_counts=1,5,10,20,30",
       "--set", "attacks=all", "--set", "defenses=all", "--set",
       "seeds=" + SeedList(10)},
      out);
  const int series = CheckSeries(out / "sweep_attackers.csv", "k",
                                 {"mean_tour_s", "p95_tour_s"}, true);
  const std::string manifest = Slurp(out / "manifest.txt");
  Require(manifest.find("nested_plans=true") != std::string::npos,
          "manifest does not record nested plans");
  return fmt::format("{} series nondecreasing in mean and p95 tour time",
                     series);
}

std::string Determinism() {
  const fs::path a = kWork / "determinism" / "w1";
  const fs::path b = kWork / "determinism" / "w3";
  const std::string cfg = (kData / "bypass.cfg").string();
  Cli({"matrix", "--config", cfg, "--workers", "1"}, a);
  Cli({"matrix", "--config", cfg, "--workers", "3"}, b);
  std::set<std::string> files;
  for (const fs::path& root : {a, b}) {
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) {
        files.insert(fs::relative(e.path(), root).string());
      }
    }
  }
  Require(files.size() >= 5, "too few output files");
  for (const std::string& f : files) {
    Require(fs::exists(a / f) && fs::exists(b / f), "only one run wrote " + f);
    Require(Slurp(a / f) == Slurp(b / f), f + " differs");
  }
  return fmt::format("{} files byte-identical with 1 and 3 workers",
                     files.size());
}

std::string TourAccounting() {
  const fs::path dir = kWork / "accounting";
  const std::string cfg = (kData / "bypass.cfg").string();
  Cli({"simulate", "--config", cfg, "--attack", "betweenness", "--defense",
       "mixnet", "--seed", "3"},
      dir / "played");
  WriteFile(dir / "no_attack.csv", "edge_id\n");
  const std::string routes = (dir / "played" / "routes.csv").string();
  Cli({"simulate", "--config", cfg, "--routes", routes, "--plan",
       (dir / "played" / "attack_plan.csv").string()},
      dir / "attacked");
  Cli({"simulate", "--config", cfg, "--routes", routes, "--plan",
       (dir / "no_attack.csv").string()},
      dir / "clean");
  const auto hit = ReadCsv(dir / "attacked" / "tour_summary.csv");
  const auto clean = ReadCsv(dir / "clean" / "tour_summary.csv");
  Require(hit.size() == clean.size() && !hit.empty(), "courier count");
  int ambushed = 0;
  for (std::size_t c = 0; c < hit.size(); ++c) {
    Require(hit[c].at("courier_id") == clean[c].at("courier_id"), "order");
    Require(Num(clean[c], "ambushes") == 0, "clean run was ambushed");
    const double n = Num(hit[c], "ambushes");
    const double diff = Num(hit[c], "tour_s") - Num(clean[c], "tour_s");
    Require(diff == kAmbushDelay * n,
            fmt::format("{}: tour difference {} for {} ambushes",
                        hit[c].at("courier_id"), diff, n));
    ambushed += n > 0;
  }
  Require(ambushed > 0, "no courier was ambushed");
  return fmt::format("{} couriers, {} ambushed, identity exact", hit.size(),
                     ambushed);
}

std::string TraceFidelity() {
  const fs::path dir = kWork / "synth";
  const fs::path base = kData / "synth_base";
  const fs::path cfg = dir / "synth.cfg";
  WriteFile(
      cfg,
      fmt::format("city.kind = grid\ncity.rows = 25\ncity.cols = 25\n"
                  "city.edge_time_s = 10\nsynth.base_nodes = {}\n"
                  "synth.base_edges = {}\nsynth.base_jobcards = {}\n"
                  "synth.tolerance = {}\n",
                  (base / "nodes.csv").string(), (base / "edges.csv").string(),
                  (base / "jobcards.csv").string(), kDeclaredSynthTolerance));
  Cli({"synth", "--config", cfg.string()}, dir / "out");
  // The same city without trace synthesis, to read its roads.
  WriteFile(dir / "grid.cfg",
            "city.kind = grid\ncity.rows = 25\ncity.cols = 25\n"
            "city.edge_time_s = 10\n");
  Cli({"gen-city", "--config", (dir / "grid.cfg").string()}, dir / "grid");

  using Card = std::map<int, Row>;
  auto cards = [](const fs::path& file) {
    std::map<std::string, Card> out;
    for (const Row& r : ReadCsv(file)) {
      out[r.at("courier_id")][std::stoi(r.at("seq"))] = r;
    }
    return out;
  };
  const auto before = cards(base / "jobcards.csv");
  const auto after = cards(dir / "out" / "jobcards.csv");
  Require(before.size() == after.size(), "courier count changed");
  for (const auto& [id, card] : before) {
    const auto it = after.find(id);
    Require(it != after.end(), "courier " + id + " missing");
    Require(it->second.size() == card.size(), id + ": stop count changed");
    for (const auto& [seq, row] : card) {
      if (seq == 0) continue;
      const Row& s = it->second.at(seq);
      Require(Num(s, "window_end_s") - Num(s, "window_start_s") ==
                  Num(row, "window_end_s") - Num(row, "window_start_s"),
              fmt::format("{} seq {}: window size changed", id, seq));
    }
  }

  Roads base_roads(base / "edges.csv");
  Roads grid_roads(dir / "grid" / "edges.csv");
  int legs = 0, widened = 0;
  for (const Row& a : ReadCsv(dir / "out" / "synth_audit.csv")) {
    const std::string& id = a.at("courier_id");
    const int seq = std::stoi(a.at("seq"));
    const double want = base_roads.Time(before.at(id).at(seq - 1).at("node_id"),
                                        before.at(id).at(seq).at("node_id"));
    const double got = grid_roads.Time(after.at(id).at(seq - 1).at("node_id"),
                                       after.at(id).at(seq).at("node_id"));
    const double tol = Num(a, "tolerance_used");
    Require(Close(Num(a, "base_leg_s"), want, kExactTol),
            id + ": audited base leg is wrong");
    Require(Close(Num(a, "synth_leg_s"), got, kExactTol),
            id + ": audited synthetic leg is wrong");
    Require(tol >= kDeclaredSynthTolerance, id + ": tolerance below declared");
    Require(std::abs(got - want) <= tol * want + kExactTol,
            fmt::format("{} seq {}: leg {} vs base {} outside {}", id, seq, got,
                        want, tol));
    ++legs;
    widened += tol > kDeclaredSynthTolerance;
  }
  int expected = 0;
  for (const auto& [id, card] : before) {
    expected += static_cast<int>(card.size()) - 1;
  }
  Require(legs == expected, "audit does not cover every leg");
  return fmt::format("{} cards, {} legs audited, {} widened", before.size(),
                     legs, widened);
}

struct Criterion {
  const char* name;
  double limit_s;  // 0 = no limit
  std::function<std::string()> run;
};

}  // namespace

int main() {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
  const std::vector<Criterion> criteria = {
      {"graph-analysis oracles", kLimitOracles, GraphOracles},
      {"planted-cut recovery", kLimitPlantedCut, PlantedCut},
      {"game-solver oracles", kLimitSolver, SolverOracles},
      {"attack and defense separation", kLimitHeadline, HeadlineFinding},
      {"window-sweep monotonicity", kLimitWindow, WindowSweep},
      {"nested attacker-count monotonicity", kLimitAttackers, AttackerSweep},
      {"determinism across worker counts", 0, Determinism},
      {"tour accounting identity", 0, TourAccounting},
      {"synthetic-trace fidelity", 0, TraceFidelity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && c.limit_s > 0 && secs >= c.limit_s) {
      ok = false;
      detail += fmt::format("; took {:.1f} s, limit {} s", secs, c.limit_s);
    }
    failed += !ok;
    fmt::print("{} {}. {} ({:.2f} s): {}\n", ok ? "PASS" : "FAIL", i + 1,
               c.name, secs, detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed,
             criteria.size());
  return failed == 0 ? 0 : 1;
}
