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

#include "ambush/game.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "ambush/errors.h"
#include "ambush/io.h"
#include "ambush/parallel.h"

namespace ambush {
namespace {

constexpr double kPivotTolerance = 1e-12;

double SampleStd(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Tableau simplex for max 1'y s.t. B y <= 1, y >= 0 with B > 0, which is
// always feasible at y = 0 and bounded. Returns primal y and the duals u of
// the row constraints; both sum to the optimum.
void SolvePositiveGame(const Matrix& b, std::vector<double>* y,
                       std::vector<double>* u) {
  const int rows = static_cast<int>(b.size());
  const int cols = static_cast<int>(b[0].size());
  const int width = cols + rows + 1;
  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) t[i][j] = b[i][j];
    t[i][cols + i] = 1.0;
    t[i][width - 1] = 1.0;
    basis[i] = cols + i;
  }
  for (int j = 0; j < cols; ++j) t[rows][j] = -1.0;

  // Bland's rule cannot cycle, so this cap is only a guard.
  const long long max_pivots = 100000LL * (rows + cols);
  for (long long it = 0;; ++it) {
    if (it > max_pivots) {
      throw ConvergenceError("simplex pivot limit reached", kPivotTolerance);
    }
    int enter = -1;
    for (int j = 0; j + 1 < width; ++j) {
      if (t[rows][j] < -kPivotTolerance) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] > kPivotTolerance) {
        best = std::min(best, t[i][width - 1] / t[i][enter]);
      }
    }
    // Bland: among the minimum-ratio rows, the lowest basic variable leaves.
    int leave = -1;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= kPivotTolerance) continue;
      if (t[i][width - 1] / t[i][enter] > best + kPivotTolerance) continue;
      if (leave < 0 || basis[i] < basis[leave]) leave = i;
    }
    if (leave < 0) throw DomainError("zero-sum program is unbounded");
    const double p = t[leave][enter];
    for (double& v : t[leave]) v /= p;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (int j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  y->assign(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < cols) (*y)[basis[i]] = t[i][width - 1];
  }
  u->assign(rows, 0.0);
  for (int i = 0; i < rows; ++i) (*u)[i] = t[rows][cols + i];
}

// Clamps tiny negatives and rescales to a probability vector.
void Normalize(std::vector<double>* p) {
  double sum = 0.0;
  for (double& v : *p) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (double& v : *p) v /= sum;
}

int OneHotIndex(std::span<const double> p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= 1.0 - 1e-12) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

void ValidateMatrix(const Matrix& m) {
  if (m.empty() || m[0].empty()) throw DomainError("payoff matrix is empty");
  for (const auto& row : m) {
    if (row.size() != m[0].size()) {
      throw DomainError("payoff matrix is not rectangular");
    }
    for (double v : row) {
      if (!std::isfinite(v))
        throw DomainError("payoff matrix has a non-finite entry");
    }
  }
}

PayoffMatrix BuildPayoffMatrix(const RoadNetwork& net,
                               std::span<const JobCard> fleet,
                               std::span<const AttackStrategy> attacks,
                               std::span<const DefenseStrategy> defenses,
                               std::span<const Seed> seeds,
                               const PayoffOptions& options) {
  if (attacks.empty() || defenses.empty()) {
    throw DomainError("strategy lists must be nonempty");
  }
  if (seeds.empty()) throw DomainError("at least one seed is required");
  if (fleet.empty()) throw DomainError("fleet is empty");
  if (options.k < 1 || options.k > net.num_edges()) {
    throw DomainError("attack budget k=" + std::to_string(options.k) +
                      " outside [1, " + std::to_string(net.num_edges()) + "]");
  }

  PayoffMatrix pm;
  pm.attacks.assign(attacks.begin(), attacks.end());
  pm.defenses.assign(defenses.begin(), defenses.end());
  pm.seeds.assign(seeds.begin(), seeds.end());
  const int rows = pm.num_rows();
  const int cols = pm.num_cols();
  const int n = static_cast<int>(seeds.size());
  pm.rounds.assign(rows, std::vector<std::vector<RoundMetrics>>(
                             cols, std::vector<RoundMetrics>(n)));

  const AttackPlanner attackers(net, options.attack);
  const RoutePlanner router(net);
  for (DefenseStrategy d : defenses) {
    if (d == DefenseStrategy::kInverse) router.inverse_scores();
  }
  // One task per (attack, seed); the plan is shared by every defense.
  ParallelFor(rows * n, options.workers, [&](int task) {
    const int i = task / n;
    const int s = task % n;
    const AttackPlan plan =
        attackers.Select(attacks[i], options.k, DeriveSeed(seeds[s], "attack"));
    for (int j = 0; j < cols; ++j) {
      pm.rounds[i][j][s] = PlayRound(router, fleet, plan, defenses[j],
                                     options.ambush_delay, seeds[s])
                               .metrics;
    }
  });

  pm.mean.assign(rows, std::vector<double>(cols, 0.0));
  pm.stddev.assign(rows, std::vector<double>(cols, 0.0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::vector<double> xs;
      for (const RoundMetrics& r : pm.rounds[i][j])
        xs.push_back(r.late_fraction);
      double sum = 0.0;
      for (double x : xs) sum += x;
      pm.mean[i][j] = sum / static_cast<double>(n);
      pm.stddev[i][j] = SampleStd(xs, pm.mean[i][j]);
    }
  }
  return pm;
}

std::vector<Cell> FindPureNash(const Matrix& m) {
  ValidateMatrix(m);
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  std::vector<double> col_max(cols, -std::numeric_limits<double>::infinity());
  std::vector<double> row_min(rows, std::numeric_limits<double>::infinity());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      col_max[j] = std::max(col_max[j], m[i][j]);
      row_min[i] = std::min(row_min[i], m[i][j]);
    }
  }
  std::vector<Cell> out;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (m[i][j] == col_max[j] && m[i][j] == row_min[i])
        out.emplace_back(i, j);
    }
  }
  return out;
}

double CertifiedEpsilon(const Matrix& m, std::span<const double> x,
                        std::span<const double> y, double value) {
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  double worst_col = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += x[i] * m[i][j];
    worst_col = std::min(worst_col, s);
  }
  double worst_row = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += m[i][j] * y[j];
    worst_row = std::max(worst_row, s);
  }
  return std::max({value - worst_col, worst_row - value, 0.0});
}

Equilibrium PureEquilibrium(const Matrix& m, Cell cell) {
  ValidateMatrix(m);
  Equilibrium eq;
  eq.kind = EquilibriumKind::kPure;
  eq.attacker.assign(m.size(), 0.0);
  eq.defender.assign(m[0].size(), 0.0);
  eq.attacker.at(cell.first) = 1.0;
  eq.defender.at(cell.second) = 1.0;
  eq.value = m[cell.first][cell.second];
  eq.epsilon = CertifiedEpsilon(m, eq.attacker, eq.defender, eq.value);
  return eq;
}

Equilibrium SolveZeroSum(const Matrix& m, double epsilon) {
  ValidateMatrix(m);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : m) {
    for (double v : row) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;
  Matrix b = m;
  for (auto& row : b) {
    for (double& v : row) v += shift;
  }
  std::vector<double> y;
  std::vector<double> u;
  SolvePositiveGame(b, &y, &u);
  double total = 0.0;
  for (double v : y) total += v;

  Equilibrium eq;
  eq.attacker = u;
  eq.defender = y;
  Normalize(&eq.attacker);
  Normalize(&eq.defender);
  eq.value = 1.0 / total - shift;

  const int row = OneHotIndex(eq.attacker);
  const int col = OneHotIndex(eq.defender);
  if (row >= 0 && col >= 0) {
    const Equilibrium pure = PureEquilibrium(m, {row, col});
    if (pure.epsilon <= epsilon) return pure;
  }
  eq.epsilon = CertifiedEpsilon(m, eq.attacker, eq.defender, eq.value);
  if (eq.epsilon > epsilon) {
    throw ConvergenceError("could not certify a zero-sum equilibrium",
                           eq.epsilon);
  }
  return eq;
}

BestResponsePath BestResponseCycle(const Matrix& m, Cell start) {
  ValidateMatrix(m);
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  if (start.first < 0 || start.first >= rows || start.second < 0 ||
      start.second >= cols) {
    throw DomainError("start cell outside the matrix");
  }
  auto attacker_reply = [&](Cell c) {
    double best = m[0][c.second];
    for (int i = 1; i < rows; ++i) best = std::max(best, m[i][c.second]);
    if (m[c.first][c.second] == best) return c;
    int i = 0;
    while (m[i][c.second] != best) ++i;
    return Cell{i, c.second};
  };
  auto defender_reply = [&](Cell c) {
    double best = m[c.first][0];
    for (int j = 1; j < cols; ++j) best = std::min(best, m[c.first][j]);
    if (m[c.first][c.second] == best) return c;
    int j = 0;
    while (m[c.first][j] != best) ++j;
    return Cell{c.first, j};
  };

  BestResponsePath path;
  path.cells.push_back(start);
  bool attacker_turn = true;
  int idle = 0;
  while (true) {
    const Cell cur = path.cells.back();
    const Cell next = attacker_turn ? attacker_reply(cur) : defender_reply(cur);
    attacker_turn = !attacker_turn;
    if (next == cur) {
      if (++idle == 2) {
        path.cycle_start = static_cast<int>(path.cells.size()) - 1;
        return path;
      }
      continue;
    }
    idle = 0;
    const auto seen = std::find(path.cells.begin(), path.cells.end(), next);
    if (seen != path.cells.end()) {
      path.cycle_start = static_cast<int>(seen - path.cells.begin());
      return path;
    }
    path.cells.push_back(next);
  }
}

void WritePayoffMatrix(const PayoffMatrix& pm, std::ostream& out) {
  out << "attack,defense,payoff_mean,payoff_std,n\n";
  for (int i = 0; i < pm.num_rows(); ++i) {
    for (int j = 0; j < pm.num_cols(); ++j) {
      out << ToString(pm.attacks[i]) << ',' << ToString(pm.defenses[j]) << ','
          << io::FormatDouble(pm.mean[i][j]) << ','
          << io::FormatDouble(pm.stddev[i][j]) << ',' << pm.seeds.size()
          << '\n';
    }
  }
}

void WriteEquilibria(std::span<const std::string> attack_names,
                     std::span<const std::string> defense_names,
                     std::span<const Equilibrium> equilibria,
                     std::ostream& out) {
  out << "kind,value,epsilon\n";
  for (const Equilibrium& eq : equilibria) {
    out << (eq.kind == EquilibriumKind::kPure ? "pure" : "mixed") << ','
        << io::FormatDouble(eq.value) << ',' << io::FormatDouble(eq.epsilon)
        << '\n';
    for (std::size_t i = 0; i < eq.attacker.size(); ++i) {
      out << "attacker," << attack_names[i] << ','
          << io::FormatDouble(eq.attacker[i]) << '\n';
    }
    for (std::size_t j = 0; j < eq.defender.size(); ++j) {
      out << "defender," << defense_names[j] << ','
          << io::FormatDouble(eq.defender[j]) << '\n';
    }
  }
}

std::vector<Equilibrium> CollectEquilibria(const Matrix& m,
                                           std::span<const Cell> pure,
                                           const Equilibrium& solved) {
  std::vector<Equilibrium> out;
  bool repeated = false;
  for (const Cell& c : pure) {
    out.push_back(PureEquilibrium(m, c));
    repeated = repeated || (out.back().attacker == solved.attacker &&
                            out.back().defender == solved.defender);
  }
  if (!repeated) out.push_back(solved);
  return out;
}

LabeledMatrix ReadPayoffTable(std::istream& in, const std::string& name) {
  LabeledMatrix t;
  std::map<std::pair<int, int>, double> cells;
  auto index_of = [](std::vector<std::string>& labels, const std::string& s) {
    auto it = std::find(labels.begin(), labels.end(), s);
    if (it != labels.end()) return static_cast<int>(it - labels.begin());
    labels.push_back(s);
    return static_cast<int>(labels.size()) - 1;
  };
  bool header = true;
  io::ForEachLine(in, [&](int number, const std::string& line) {
    const auto f = io::SplitCsv(line);
    if (header) {
      if (f.size() < 3 || f[0] != "attack" || f[1] != "defense" ||
          f[2] != "payoff_mean") {
        throw ParseError(name, number,
                         "expected header 'attack,defense,payoff_mean'");
      }
      header = false;
      return;
    }
    if (f.size() < 3 || f[0].empty() || f[1].empty()) {
      throw ParseError(name, number, "expected attack,defense,payoff_mean");
    }
    double v = 0.0;
    if (!io::ParseDouble(f[2], &v) || !std::isfinite(v)) {
      throw ParseError(name, number, "bad payoff '" + f[2] + "'");
    }
    const int i = index_of(t.rows, f[0]);
    const int j = index_of(t.cols, f[1]);
    if (!cells.emplace(std::pair{i, j}, v).second) {
      throw ParseError(name, number, "repeated cell " + f[0] + "," + f[1]);
    }
  });
  if (header) throw ParseError(name, 0, "missing header");
  if (t.rows.empty()) throw ParseError(name, 0, "no payoff rows");
  t.values.assign(t.rows.size(), std::vector<double>(t.cols.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.cols.size(); ++j) {
      auto it = cells.find({static_cast<int>(i), static_cast<int>(j)});
      if (it == cells.end()) {
        throw ParseError(name, 0,
                         "missing cell " + t.rows[i] + "," + t.cols[j]);
      }
      t.values[i][j] = it->second;
    }
  }
  return t;
}

}  // namespace ambush
