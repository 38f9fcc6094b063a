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

#include <fmt/format.h>

#include <charconv>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ambush/errors.h"
#include "ambush/io.h"
#include "ambush/parallel.h"

namespace ambush {
namespace {

using Setter = std::function<void(ExperimentConfig*, std::string_view,
                                  const std::filesystem::path&)>;

// Thrown by setters; rewrapped with the source position.
struct BadValue {
  std::string what;
};

double ToDouble(std::string_view v) {
  double d = 0.0;
  if (!io::ParseDouble(v, &d)) throw BadValue{"expected a number"};
  return d;
}

int ToInt(std::string_view v) {
  long long x = 0;
  if (!io::ParseInt(v, &x) || x < -2147483647LL || x > 2147483647LL) {
    throw BadValue{"expected an integer"};
  }
  return static_cast<int>(x);
}

Seed ToSeed(std::string_view v) {
  Seed s = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
    throw BadValue{"expected an unsigned integer seed"};
  }
  return s;
}

bool ToBool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw BadValue{"expected true or false"};
}

std::vector<std::string> ToList(std::string_view v) {
  std::vector<std::string> out;
  for (const std::string& f : io::SplitCsv(v)) {
    std::string t = io::Trim(f);
    if (t.empty()) throw BadValue{"empty list element"};
    out.push_back(std::move(t));
  }
  return out;
}

std::filesystem::path ToPath(std::string_view v,
                             const std::filesystem::path& base) {
  if (v.empty()) throw BadValue{"expected a path"};
  std::filesystem::path p{std::string(v)};
  return p.is_relative() && !base.empty() ? base / p : p;
}

CityParams& CityOf(ExperimentConfig* c) {
  if (!c->city) c->city.emplace();
  return *c->city;
}

FleetParams& FleetOf(ExperimentConfig* c) {
  if (!c->fleet) c->fleet.emplace();
  return *c->fleet;
}

template <typename T>
std::string Join(const std::vector<T>& xs, auto&& fmt_one) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt_one(xs[i]);
  }
  return out;
}

struct KeySpec {
  const char* key;
  const char* help;
  Setter set;
};

const std::vector<KeySpec>& Keys() {
  static const std::vector<KeySpec> keys = {
      {"network.nodes", "node file (node_id,x,y)",
       [](auto* c, auto v, auto& b) { c->nodes_path = ToPath(v, b); }},
      {"network.edges", "edge file (edge_id,u,v,length_m,speed_mps)",
       [](auto* c, auto v, auto& b) { c->edges_path = ToPath(v, b); }},
      {"city.kind", "grid | geometric | two_cluster (instead of files)",
       [](auto* c, auto v, auto&) {
         auto k = ParseCityKind(v);
         if (!k) throw BadValue{"unknown city kind"};
         CityOf(c).kind = *k;
       }},
      {"city.rows", "lattice rows (default 4)",
       [](auto* c, auto v, auto&) { CityOf(c).rows = ToInt(v); }},
      {"city.cols", "lattice columns (default 4)",
       [](auto* c, auto v, auto&) { CityOf(c).cols = ToInt(v); }},
      {"city.edge_length_m", "lattice edge length (default 100)",
       [](auto* c, auto v, auto&) { CityOf(c).edge_length_m = ToDouble(v); }},
      {"city.edge_time_s", "lattice edge travel time (default 60)",
       [](auto* c, auto v, auto&) { CityOf(c).edge_time_s = ToDouble(v); }},
      {"city.n", "geometric node count (default 60)",
       [](auto* c, auto v, auto&) { CityOf(c).n = ToInt(v); }},
      {"city.radius", "geometric link radius, fraction of extent (default 0.2)",
       [](auto* c, auto v, auto&) { CityOf(c).radius = ToDouble(v); }},
      {"city.extent_m", "geometric square side (default 2000)",
       [](auto* c, auto v, auto&) { CityOf(c).extent_m = ToDouble(v); }},
      {"city.speed_mps", "geometric road speed (default 10)",
       [](auto* c, auto v, auto&) { CityOf(c).speed_mps = ToDouble(v); }},
      {"city.max_retries", "geometric connectivity attempts (default 100)",
       [](auto* c, auto v, auto&) { CityOf(c).max_retries = ToInt(v); }},
      {"city.bridges", "two_cluster bridge count (default 2)",
       [](auto* c, auto v, auto&) { CityOf(c).bridges = ToInt(v); }},
      {"city.bypass_hops", "two_cluster bypass chain length, 0 = none",
       [](auto* c, auto v, auto&) { CityOf(c).bypass_hops = ToInt(v); }},
      {"city.bypass_edge_time_s", "two_cluster bypass edge time (default 60)",
       [](auto* c, auto v, auto&) {
         CityOf(c).bypass_edge_time_s = ToDouble(v);
       }},
      {"city.seed", "generator seed (default 1)",
       [](auto* c, auto v, auto&) { c->city_seed = ToSeed(v); }},
      {"jobcards", "job-card file",
       [](auto* c, auto v, auto& b) { c->jobcards_path = ToPath(v, b); }},
      {"fleet.couriers", "generated fleet size (default 10)",
       [](auto* c, auto v, auto&) { FleetOf(c).couriers = ToInt(v); }},
      {"fleet.stops", "stops per generated card (default 6)",
       [](auto* c, auto v, auto&) { FleetOf(c).stops = ToInt(v); }},
      {"fleet.window_s", "delivery window size (default 1800)",
       [](auto* c, auto v, auto&) { FleetOf(c).window_s = ToDouble(v); }},
      {"fleet.day_start_s", "departure time (default 28800)",
       [](auto* c, auto v, auto&) { FleetOf(c).day_start_s = ToDouble(v); }},
      {"fleet.cross_zones",
       "alternate stops between city zones (default false)",
       [](auto* c, auto v, auto&) { FleetOf(c).cross_zones = ToBool(v); }},
      {"fleet.seed", "fleet generator seed (default 1)",
       [](auto* c, auto v, auto&) { c->fleet_seed = ToSeed(v); }},
      {"synth.base_nodes", "trace synthesis: base node file",
       [](auto* c, auto v, auto& b) { c->synth_base_nodes = ToPath(v, b); }},
      {"synth.base_edges", "trace synthesis: base edge file",
       [](auto* c, auto v, auto& b) { c->synth_base_edges = ToPath(v, b); }},
      {"synth.base_jobcards", "trace synthesis: base job cards",
       [](auto* c, auto v, auto& b) { c->synth_base_jobcards = ToPath(v, b); }},
      {"synth.tolerance", "relative leg tolerance (default 0.1)",
       [](auto* c, auto v, auto&) {
         c->synth_tolerance.relative_tolerance = ToDouble(v);
       }},
      {"synth.max_candidates", "candidate cap, 0 = none (default 0)",
       [](auto* c, auto v, auto&) {
         c->synth_tolerance.max_candidates = ToInt(v);
       }},
      {"synth.seed", "trace synthesis seed (default 1)",
       [](auto* c, auto v, auto&) { c->synth_seed = ToSeed(v); }},
      {"attacks", "attack list or 'all' (default all nine)",
       [](auto* c, auto v, auto&) {
         c->attacks.clear();
         if (v == "all") {
           c->attacks.assign(kAllAttacks.begin(), kAllAttacks.end());
           return;
         }
         for (const auto& s : ToList(v)) {
           auto a = ParseAttackStrategy(s);
           if (!a) throw BadValue{"unknown attack '" + s + "'"};
           c->attacks.push_back(*a);
         }
       }},
      {"defenses", "defense list or 'all' (default shortest,inverse,mixnet)",
       [](auto* c, auto v, auto&) {
         c->defenses.clear();
         if (v == "all") {
           c->defenses.assign(kAllDefenses.begin(), kAllDefenses.end());
           return;
         }
         for (const auto& s : ToList(v)) {
           auto d = ParseDefenseStrategy(s);
           if (!d) throw BadValue{"unknown defense '" + s + "'"};
           c->defenses.push_back(*d);
         }
       }},
      {"k", "attacker count (default 30)",
       [](auto* c, auto v, auto&) { c->k = ToInt(v); }},
      {"M", "ambush delay in seconds (default 600)",
       [](auto* c, auto v, auto&) { c->ambush_delay = ToDouble(v); }},
      {"window_multipliers", "window sweep values (default 1,1.25,...,3.5)",
       [](auto* c, auto v, auto&) {
         c->window_multipliers.clear();
         for (const auto& s : ToList(v))
           c->window_multipliers.push_back(ToDouble(s));
       }},
      {"attacker_counts", "attacker sweep values (default 1,5,10,20,30,40,50)",
       [](auto* c, auto v, auto&) {
         c->attacker_counts.clear();
         for (const auto& s : ToList(v)) c->attacker_counts.push_back(ToInt(s));
       }},
      {"seeds", "round seeds (default 1,...,10)",
       [](auto* c, auto v, auto&) {
         c->seeds.clear();
         for (const auto& s : ToList(v)) c->seeds.push_back(ToSeed(s));
       }},
      {"nested_plans", "attacker sweep uses nested plans (default false)",
       [](auto* c, auto v, auto&) { c->nested_plans = ToBool(v); }},
      {"epsilon", "equilibrium tolerance (default 1e-6)",
       [](auto* c, auto v, auto&) { c->epsilon = ToDouble(v); }},
      {"output_dir", "report directory (default out)",
       [](auto* c, auto v, auto& b) { c->output_dir = ToPath(v, b); }},
      {"workers", "worker threads (default 1)",
       [](auto* c, auto v, auto&) { c->workers = ToInt(v); }},
  };
  return keys;
}

std::string Num(double v) { return io::FormatDouble(v); }

void WriteSweep(const std::optional<SweepResult>& sweep, std::ostream& out) {
  out << kRoundMetricsHeader << ",seed\n";
  if (!sweep) return;
  for (const SweepRow& row : sweep->rows) {
    WriteRoundRecord(row.record, out);
    out << ',' << (row.seed ? std::to_string(*row.seed) : "all") << '\n';
  }
}

SweepRow MakeRow(double axis_value, AttackStrategy a, DefenseStrategy d,
                 std::optional<Seed> seed, int k, double mult,
                 const ExperimentConfig& cfg,
                 std::span<const TourResult> tours) {
  SweepRow row;
  row.axis_value = axis_value;
  row.attack = a;
  row.defense = d;
  row.seed = seed;
  row.record = RoundRecord{std::string(ToString(a)),
                           std::string(ToString(d)),
                           k,
                           cfg.ambush_delay,
                           mult,
                           Aggregate(tours)};
  for (const TourResult& t : tours) row.tour_times.push_back(t.tour_time);
  return row;
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (int i = 0; i <= 10; ++i) window_multipliers.push_back(1.0 + 0.25 * i);
}

void ValidateConfig(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw ValidationError("config: " + what);
  };
  if (cfg.k < 1) fail("k must be >= 1");
  if (!(cfg.ambush_delay > 0.0)) fail("M must be positive");
  if (!(cfg.epsilon > 0.0)) fail("epsilon must be positive");
  if (cfg.workers < 1) fail("workers must be >= 1");
  if (cfg.attacks.empty()) fail("attacks must be nonempty");
  if (cfg.defenses.empty()) fail("defenses must be nonempty");
  if (cfg.seeds.empty()) fail("seeds must be nonempty");
  for (double m : cfg.window_multipliers) {
    if (!(m >= 1.0)) fail("window multipliers must be >= 1");
  }
  for (int k : cfg.attacker_counts) {
    if (k < 1) fail("attacker counts must be >= 1");
  }
  const bool files = !cfg.nodes_path.empty() || !cfg.edges_path.empty();
  if (files && cfg.city) fail("give either network files or city.*, not both");
  if (!cfg.city && (cfg.nodes_path.empty() || cfg.edges_path.empty())) {
    fail("network.nodes and network.edges (or city.*) are required");
  }
  const bool synth = !cfg.synth_base_jobcards.empty() ||
                     !cfg.synth_base_nodes.empty() ||
                     !cfg.synth_base_edges.empty();
  const int sources =
      !cfg.jobcards_path.empty() + cfg.fleet.has_value() + synth;
  if (sources != 1)
    fail("exactly one of jobcards, fleet.*, synth.* is required");
  if (synth && (cfg.synth_base_jobcards.empty() ||
                cfg.synth_base_nodes.empty() || cfg.synth_base_edges.empty())) {
    fail("synth needs base_nodes, base_edges and base_jobcards");
  }
}

void SetConfigValue(ExperimentConfig* cfg, std::string_view key,
                    std::string_view value, const std::string& name, int line,
                    const std::filesystem::path& base_dir) {
  for (const KeySpec& spec : Keys()) {
    if (key != spec.key) continue;
    try {
      spec.set(cfg, io::Trim(value), base_dir);
    } catch (const BadValue& bad) {
      throw ParseError(name, line, fmt::format("{}: {}", key, bad.what));
    }
    return;
  }
  throw ParseError(name, line, fmt::format("unknown key '{}'", key));
}

ExperimentConfig ReadConfig(std::istream& in, const std::string& name,
                            const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  io::ForEachLine(in, [&](int number, const std::string& raw) {
    const std::string line = io::Trim(raw);
    if (line[0] == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(name, number, "expected 'key = value'");
    }
    SetConfigValue(&cfg, io::Trim(line.substr(0, eq)), line.substr(eq + 1),
                   name, number, base_dir);
  });
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& file) {
  auto in = io::OpenForRead(file);
  return ReadConfig(in, file.string(), file.parent_path());
}

std::string ConfigKeysHelp() {
  std::string out;
  for (const KeySpec& spec : Keys()) {
    out += fmt::format("  {:<22} {}\n", spec.key, spec.help);
  }
  return out;
}

std::string CanonicalConfig(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["network.nodes"] = cfg.nodes_path.generic_string();
  kv["network.edges"] = cfg.edges_path.generic_string();
  if (cfg.city) {
    const CityParams& c = *cfg.city;
    kv["city.kind"] = ToString(c.kind);
    kv["city.rows"] = std::to_string(c.rows);
    kv["city.cols"] = std::to_string(c.cols);
    kv["city.edge_length_m"] = Num(c.edge_length_m);
    kv["city.edge_time_s"] = Num(c.edge_time_s);
    kv["city.n"] = std::to_string(c.n);
    kv["city.radius"] = Num(c.radius);
    kv["city.extent_m"] = Num(c.extent_m);
    kv["city.speed_mps"] = Num(c.speed_mps);
    kv["city.max_retries"] = std::to_string(c.max_retries);
    kv["city.bridges"] = std::to_string(c.bridges);
    kv["city.bypass_hops"] = std::to_string(c.bypass_hops);
    kv["city.bypass_edge_time_s"] = Num(c.bypass_edge_time_s);
    kv["city.seed"] = std::to_string(cfg.city_seed);
  }
  kv["jobcards"] = cfg.jobcards_path.generic_string();
  if (cfg.fleet) {
    const FleetParams& f = *cfg.fleet;
    kv["fleet.couriers"] = std::to_string(f.couriers);
    kv["fleet.stops"] = std::to_string(f.stops);
    kv["fleet.window_s"] = Num(f.window_s);
    kv["fleet.day_start_s"] = Num(f.day_start_s);
    kv["fleet.cross_zones"] = f.cross_zones ? "true" : "false";
    kv["fleet.seed"] = std::to_string(cfg.fleet_seed);
  }
  kv["synth.base_nodes"] = cfg.synth_base_nodes.generic_string();
  kv["synth.base_edges"] = cfg.synth_base_edges.generic_string();
  kv["synth.base_jobcards"] = cfg.synth_base_jobcards.generic_string();
  kv["synth.tolerance"] = Num(cfg.synth_tolerance.relative_tolerance);
  kv["synth.max_candidates"] =
      std::to_string(cfg.synth_tolerance.max_candidates);
  kv["synth.seed"] = std::to_string(cfg.synth_seed);
  kv["attacks"] =
      Join(cfg.attacks, [](auto a) { return std::string(ToString(a)); });
  kv["defenses"] =
      Join(cfg.defenses, [](auto d) { return std::string(ToString(d)); });
  kv["k"] = std::to_string(cfg.k);
  kv["M"] = Num(cfg.ambush_delay);
  kv["window_multipliers"] = Join(cfg.window_multipliers, Num);
  kv["attacker_counts"] =
      Join(cfg.attacker_counts, [](int k) { return std::to_string(k); });
  kv["seeds"] = Join(cfg.seeds, [](Seed s) { return std::to_string(s); });
  kv["nested_plans"] = cfg.nested_plans ? "true" : "false";
  kv["epsilon"] = Num(cfg.epsilon);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t ConfigHash(const ExperimentConfig& cfg) {
  return HashString(CanonicalConfig(cfg));
}

Scenario LoadScenario(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  std::optional<City> city;
  if (cfg.city) {
    city = GenerateCity(*cfg.city, cfg.city_seed);
  } else {
    RoadNetwork net = LoadNetwork(cfg.nodes_path, cfg.edges_path);
    std::vector<NodeIndex> all(net.num_nodes());
    for (NodeIndex v = 0; v < net.num_nodes(); ++v) all[v] = v;
    city = City{std::move(net), {std::move(all)}};
  }
  Scenario s{std::move(city->net), {}, {}};
  if (!cfg.jobcards_path.empty()) {
    s.fleet = ParseJobCards(cfg.jobcards_path);
  } else if (cfg.fleet) {
    s.fleet =
        GenerateFleet(City{s.net, city->zones}, *cfg.fleet, cfg.fleet_seed);
  } else {
    const RoadNetwork base =
        LoadNetwork(cfg.synth_base_nodes, cfg.synth_base_edges);
    const auto cards = ParseJobCards(cfg.synth_base_jobcards);
    auto synth = SynthesizeTraces(cards, base, s.net, cfg.synth_tolerance,
                                  cfg.synth_seed);
    s.fleet = std::move(synth.cards);
    s.synth_audit = std::move(synth.audit);
  }
  if (s.fleet.empty()) throw ValidationError("fleet is empty");
  return s;
}

MatrixResult RunMatrix(const Scenario& scenario, const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  PayoffOptions options;
  options.k = cfg.k;
  options.ambush_delay = cfg.ambush_delay;
  options.workers = cfg.workers;
  options.attack.workers = 1;
  MatrixResult r;
  r.payoff = BuildPayoffMatrix(scenario.net, scenario.fleet, cfg.attacks,
                               cfg.defenses, cfg.seeds, options);
  r.pure = FindPureNash(r.payoff.mean);
  r.mixed = SolveZeroSum(r.payoff.mean, cfg.epsilon);
  return r;
}

std::string_view ToString(SweepAxis axis) {
  return axis == SweepAxis::kWindow ? "window" : "attackers";
}

std::optional<SweepAxis> ParseSweepAxis(std::string_view name) {
  if (name == "window") return SweepAxis::kWindow;
  if (name == "attackers") return SweepAxis::kAttackers;
  return std::nullopt;
}

Seed AttackSeed(Seed round_seed, int k, bool nested) {
  const Seed base = DeriveSeed(round_seed, "attack");
  return nested ? base : DeriveSeed(base, static_cast<std::uint64_t>(k));
}

SweepResult RunSweep(const Scenario& scenario, const ExperimentConfig& cfg,
                     SweepAxis axis) {
  ValidateConfig(cfg);
  const RoadNetwork& net = scenario.net;
  const bool window = axis == SweepAxis::kWindow;
  std::vector<double> values;
  if (window) {
    values = cfg.window_multipliers;
  } else {
    for (int k : cfg.attacker_counts) {
      if (k > net.num_edges()) {
        throw ValidationError(fmt::format(
            "attacker count {} exceeds the {} roads", k, net.num_edges()));
      }
      values.push_back(k);
    }
  }
  if (window && cfg.k > net.num_edges()) {
    throw ValidationError(
        fmt::format("k={} exceeds the {} roads", cfg.k, net.num_edges()));
  }

  const int na = static_cast<int>(cfg.attacks.size());
  const int nd = static_cast<int>(cfg.defenses.size());
  const int ns = static_cast<int>(cfg.seeds.size());
  const int nv = static_cast<int>(values.size());
  std::vector<std::vector<JobCard>> fleets;
  if (window) {
    for (double m : values)
      fleets.push_back(ApplyWindowMultiplier(scenario.fleet, m));
  }

  const AttackPlanner attackers(net);
  const RoutePlanner router(net);
  for (DefenseStrategy d : cfg.defenses) {
    if (d == DefenseStrategy::kInverse) router.inverse_scores();
  }
  // tours[((v * na + a) * nd + d) * ns + s]
  std::vector<std::vector<TourResult>> tours(static_cast<std::size_t>(nv) * na *
                                             nd * ns);
  auto slot = [&](int v, int a, int d, int s) -> std::vector<TourResult>& {
    return tours[((static_cast<std::size_t>(v) * na + a) * nd + d) * ns + s];
  };
  const AttackPlan none;
  ParallelFor(na * ns, cfg.workers, [&](int task) {
    const int a = task / ns;
    const int s = task % ns;
    const Seed seed = cfg.seeds[s];
    // Routes never depend on the attack, so one plan per defense serves
    // every axis value.
    std::vector<std::vector<RoutePlan>> routes(nd);
    for (int d = 0; d < nd; ++d) {
      routes[d] = PlayRound(router, scenario.fleet, none, cfg.defenses[d],
                            cfg.ambush_delay, seed)
                      .routes;
    }
    std::optional<AttackPlan> shared;
    for (int v = 0; v < nv; ++v) {
      const int k = window ? cfg.k : static_cast<int>(values[v]);
      AttackPlan plan;
      if (window || cfg.nested_plans) {
        if (!shared) {
          shared =
              attackers.Select(cfg.attacks[a], window ? cfg.k : net.num_edges(),
                               AttackSeed(seed, k, true));
        }
        plan = shared->Prefix(k);
      } else {
        plan = attackers.Select(cfg.attacks[a], k, AttackSeed(seed, k, false));
      }
      const auto& fleet = window ? fleets[v] : scenario.fleet;
      for (int d = 0; d < nd; ++d) {
        slot(v, a, d, s) =
            ReplayRound(net, fleet, routes[d], plan, cfg.ambush_delay).tours;
      }
    }
  });

  SweepResult result;
  result.axis = axis;
  for (int v = 0; v < nv; ++v) {
    const int k = window ? cfg.k : static_cast<int>(values[v]);
    const double mult = window ? values[v] : 1.0;
    for (int a = 0; a < na; ++a) {
      for (int d = 0; d < nd; ++d) {
        std::vector<TourResult> pooled;
        for (int s = 0; s < ns; ++s) {
          const auto& t = slot(v, a, d, s);
          result.rows.push_back(MakeRow(values[v], cfg.attacks[a],
                                        cfg.defenses[d], cfg.seeds[s], k, mult,
                                        cfg, t));
          pooled.insert(pooled.end(), t.begin(), t.end());
        }
        result.rows.push_back(MakeRow(values[v], cfg.attacks[a],
                                      cfg.defenses[d], std::nullopt, k, mult,
                                      cfg, pooled));
      }
    }
  }
  return result;
}

void EmitReports(const Reports& reports, const ExperimentConfig& cfg,
                 const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    throw Error(fmt::format("cannot create output directory '{}': {}",
                            output_dir.string(), ec.message()));
  }
  const MatrixResult* m = reports.matrix ? &*reports.matrix : nullptr;

  {
    auto out = io::OpenForWrite(output_dir / "payoff_matrix.csv");
    if (m) {
      WritePayoffMatrix(m->payoff, out);
    } else {
      out << "attack,defense,payoff_mean,payoff_std,n\n";
    }
  }
  {
    auto out = io::OpenForWrite(output_dir / "equilibria.csv");
    std::vector<std::string> an;
    std::vector<std::string> dn;
    std::vector<Equilibrium> eqs;
    if (m) {
      for (auto a : m->payoff.attacks) an.emplace_back(ToString(a));
      for (auto d : m->payoff.defenses) dn.emplace_back(ToString(d));
      eqs = CollectEquilibria(m->payoff.mean, m->pure, m->mixed);
    }
    WriteEquilibria(an, dn, eqs, out);
  }
  {
    auto out = io::OpenForWrite(output_dir / "round_metrics.csv");
    out << kRoundMetricsHeader << ",seed\n";
    if (m) {
      const PayoffMatrix& pm = m->payoff;
      for (int i = 0; i < pm.num_rows(); ++i) {
        for (int j = 0; j < pm.num_cols(); ++j) {
          for (std::size_t s = 0; s < pm.seeds.size(); ++s) {
            RoundRecord rec{std::string(ToString(pm.attacks[i])),
                            std::string(ToString(pm.defenses[j])),
                            cfg.k,
                            cfg.ambush_delay,
                            1.0,
                            pm.rounds[i][j][s]};
            WriteRoundRecord(rec, out);
            out << ',' << pm.seeds[s] << '\n';
          }
        }
      }
    }
  }
  {
    auto out = io::OpenForWrite(output_dir / "critical_delays.csv");
    out << "attack,defense,crit_frac_of_late,late_frac,total_late,"
           "total_critical\n";
    if (m) {
      const PayoffMatrix& pm = m->payoff;
      for (int i = 0; i < pm.num_rows(); ++i) {
        for (int j = 0; j < pm.num_cols(); ++j) {
          long long late = 0;
          long long critical = 0;
          long long deliveries = 0;
          for (const RoundMetrics& r : pm.rounds[i][j]) {
            late += r.total_late;
            critical += r.total_critical;
            deliveries += r.total_deliveries;
          }
          const double crit =
              late > 0 ? static_cast<double>(critical) / late : 0.0;
          const double frac =
              deliveries > 0 ? static_cast<double>(late) / deliveries : 0.0;
          out << ToString(pm.attacks[i]) << ',' << ToString(pm.defenses[j])
              << ',' << Num(crit) << ',' << Num(frac) << ',' << late << ','
              << critical << '\n';
        }
      }
    }
  }
  {
    auto out = io::OpenForWrite(output_dir / "sweep_window.csv");
    WriteSweep(reports.window, out);
  }
  {
    auto out = io::OpenForWrite(output_dir / "sweep_attackers.csv");
    WriteSweep(reports.attackers, out);
  }
  {
    auto out = io::OpenForWrite(output_dir / "manifest.txt");
    out << "command=" << reports.command << '\n'
        << fmt::format("config_hash={:016x}\n", ConfigHash(cfg))
        << "seeds=" << Join(cfg.seeds, [](Seed s) { return std::to_string(s); })
        << '\n'
        << "nested_plans=" << (cfg.nested_plans ? "true" : "false") << '\n';
  }
}

}  // namespace ambush
