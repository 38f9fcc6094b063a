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

#ifndef AMBUSH_GAME_H_
#define AMBUSH_GAME_H_

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ambush/attack.h"
#include "ambush/defense.h"
#include "ambush/job_card.h"
#include "ambush/random.h"
#include "ambush/road_network.h"
#include "ambush/simulation.h"

namespace ambush {

// Row-major dense payoff matrix. Rows belong to the attacker (maximizer),
// columns to the defender (minimizer).
using Matrix = std::vector<std::vector<double>>;

// Throws DomainError unless `m` is nonempty, rectangular and finite.
void ValidateMatrix(const Matrix& m);

struct PayoffMatrix {
  std::vector<AttackStrategy> attacks;
  std::vector<DefenseStrategy> defenses;
  std::vector<Seed> seeds;
  // rounds[i][j][s]: metrics of attack i vs defense j under seeds[s].
  std::vector<std::vector<std::vector<RoundMetrics>>> rounds;
  // Mean late fraction per cell and its sample standard deviation.
  Matrix mean;
  Matrix stddev;

  int num_rows() const { return static_cast<int>(attacks.size()); }
  int num_cols() const { return static_cast<int>(defenses.size()); }
};

struct PayoffOptions {
  int k = 30;
  double ambush_delay = kDefaultAmbushDelay;
  int workers = 1;
  AttackOptions attack;
};

// Cell (i, j) averages the late fraction of one round per seed, where each
// round matches RunRound(net, fleet, attacks[i], defenses[j], k, M, seed).
PayoffMatrix BuildPayoffMatrix(const RoadNetwork& net,
                               std::span<const JobCard> fleet,
                               std::span<const AttackStrategy> attacks,
                               std::span<const DefenseStrategy> defenses,
                               std::span<const Seed> seeds,
                               const PayoffOptions& options = {});

using Cell = std::pair<int, int>;

// Saddle points: cells that are the maximum of their column and the minimum
// of their row. Ties count. Empty when none exist.
std::vector<Cell> FindPureNash(const Matrix& m);

enum class EquilibriumKind { kPure, kMixed };

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::kMixed;
  std::vector<double> attacker;
  std::vector<double> defender;
  double value = 0.0;
  double epsilon = 0.0;
};

// Bounds certified by (x, y) against v:
//   max(v - min_j x'A e_j, max_i e_i'A y - v, 0).
double CertifiedEpsilon(const Matrix& m, std::span<const double> x,
                        std::span<const double> y, double value);

// Optimal mixed strategies via the simplex method (Bland's rule). The
// returned epsilon is recomputed from the vectors. Throws ConvergenceError
// carrying the best epsilon if it exceeds `epsilon`, DomainError if
// epsilon <= 0 or the matrix is invalid.
Equilibrium SolveZeroSum(const Matrix& m, double epsilon = 1e-6);

struct BestResponsePath {
  // Visited cells in order; the path then returns to cells[cycle_start].
  // A pure saddle shows up as cycle_start == cells.size() - 1 with both
  // players content to stay.
  std::vector<Cell> cells;
  int cycle_start = 0;
};

// Alternating best responses, attacker first. The mover keeps its current
// strategy when it is already a best response, otherwise takes the lowest
// index among the best. Stops when a cell repeats or neither player moves.
BestResponsePath BestResponseCycle(const Matrix& m, Cell start);

// `attack,defense,payoff_mean,payoff_std,n`.
void WritePayoffMatrix(const PayoffMatrix& pm, std::ostream& out);

// A payoff table with free-form strategy labels, e.g. a saved matrix export
// or a hand-written game.
struct LabeledMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  Matrix values;
};

// Reads `attack,defense,payoff_mean[,...]` rows; extra columns are ignored.
// Labels keep first-appearance order. Throws ParseError on malformed rows,
// repeated cells or a missing cell.
LabeledMatrix ReadPayoffTable(std::istream& in,
                              const std::string& name = "payoff");

// Header `kind,value,epsilon`; each equilibrium is one such line followed by
// `attacker,<name>,<prob>` and `defender,<name>,<prob>` lines for every
// strategy.
void WriteEquilibria(std::span<const std::string> attack_names,
                     std::span<const std::string> defense_names,
                     std::span<const Equilibrium> equilibria,
                     std::ostream& out);

// Report order: one pure equilibrium per saddle cell, then `solved` unless
// it repeats one of them.
std::vector<Equilibrium> CollectEquilibria(const Matrix& m,
                                           std::span<const Cell> pure,
                                           const Equilibrium& solved);

// One-hot equilibrium for a saddle cell.
Equilibrium PureEquilibrium(const Matrix& m, Cell cell);

}  // namespace ambush

#endif  // AMBUSH_GAME_H_
