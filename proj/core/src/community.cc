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

#include "ambush/community.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <utility>

#include "ambush/errors.h"
#include "ambush/paths.h"

namespace ambush {
namespace {

// Gains at or below this are treated as no improvement.
constexpr double kGainEpsilon = 1e-12;
constexpr double kLouvainStop = 1e-9;

double PLogP(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// ---------------------------------------------------------------------------
// Greedy pairwise merging (Clauset-Newman-Moore).

Partition GreedyMerge(const RoadNetwork& net) {
  const int n = net.num_nodes();
  const double two_m = 2.0 * net.num_edges();
  if (net.num_edges() == 0) return Partition::Single(n);

  // e[i][j]: fraction of edge ends joining communities i and j (i != j).
  std::vector<std::map<int, double>> e(n);
  std::vector<double> a(n);
  std::vector<char> alive(n, 1);
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (const Edge& edge : net.edges()) {
    e[edge.u][edge.v] += 1.0 / two_m;
    e[edge.v][edge.u] += 1.0 / two_m;
  }
  for (NodeIndex v = 0; v < n; ++v) a[v] = net.degree(v) / two_m;

  while (true) {
    double best = kGainEpsilon;
    int bi = -1;
    int bj = -1;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (const auto& [j, eij] : e[i]) {
        if (j <= i) continue;
        const double gain = 2.0 * (eij - a[i] * a[j]);
        if (gain > best) {
          best = gain;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    // Fold bj into bi.
    for (const auto& [k, ejk] : e[bj]) {
      if (k == bi) continue;
      e[bi][k] += ejk;
      e[k][bi] += ejk;
      e[k].erase(bj);
    }
    e[bi].erase(bj);
    e[bj].clear();
    a[bi] += a[bj];
    alive[bj] = 0;
    for (int& l : label) {
      if (l == bj) l = bi;
    }
  }
  return Partition(std::move(label));
}

// ---------------------------------------------------------------------------
// Multilevel local moves + coarsening (Louvain).

struct WeightedGraph {
  // Symmetric weights A_cd over ordered pairs; self entries hold A_cc.
  std::vector<std::map<int, double>> adj;
  std::vector<double> strength;
  double total = 0.0;  // sum of strengths (2m)
};

WeightedGraph FromNetwork(const RoadNetwork& net) {
  WeightedGraph g;
  g.adj.resize(net.num_nodes());
  for (const Edge& edge : net.edges()) {
    g.adj[edge.u][edge.v] += 1.0;
    g.adj[edge.v][edge.u] += 1.0;
  }
  g.strength.resize(net.num_nodes());
  for (int v = 0; v < net.num_nodes(); ++v) {
    for (const auto& [w, x] : g.adj[v]) g.strength[v] += x;
    g.total += g.strength[v];
  }
  return g;
}

// One local-moving phase. Returns canonical community labels and whether any
// node moved.
std::pair<std::vector<int>, bool> LocalMoves(const WeightedGraph& g) {
  const int n = static_cast<int>(g.adj.size());
  std::vector<int> comm(n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> tot(g.strength);
  bool moved_any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      const int home = comm[i];
      const double ki = g.strength[i];
      std::map<int, double> links;
      for (const auto& [j, w] : g.adj[i]) {
        if (j != i) links[comm[j]] += w;
      }
      tot[home] -= ki;
      auto gain = [&](int c) {
        auto it = links.find(c);
        const double kin = it == links.end() ? 0.0 : it->second;
        return kin - tot[c] * ki / g.total;
      };
      int best = home;
      double best_gain = gain(home);
      for (const auto& [c, w] : links) {
        const double gc = gain(c);
        if (gc > best_gain + kGainEpsilon) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += ki;
      if (best != home) {
        comm[i] = best;
        moved = true;
        moved_any = true;
      }
    }
  }
  return {Partition(comm).labels(), moved_any};
}

WeightedGraph Coarsen(const WeightedGraph& g, const std::vector<int>& comm,
                      int num_comm) {
  WeightedGraph h;
  h.adj.resize(num_comm);
  h.strength.assign(num_comm, 0.0);
  for (int i = 0; i < static_cast<int>(g.adj.size()); ++i) {
    for (const auto& [j, w] : g.adj[i]) h.adj[comm[i]][comm[j]] += w;
  }
  for (int c = 0; c < num_comm; ++c) {
    for (const auto& [d, w] : h.adj[c]) h.strength[c] += w;
  }
  h.total = g.total;
  return h;
}

Partition Louvain(const RoadNetwork& net) {
  const int n = net.num_nodes();
  if (net.num_edges() == 0) return Partition::Single(n);
  WeightedGraph g = FromNetwork(net);
  std::vector<int> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  Partition best(membership);
  double best_q = Modularity(net, best);
  while (true) {
    auto [comm, moved] = LocalMoves(g);
    if (!moved) break;
    const int num_comm = *std::max_element(comm.begin(), comm.end()) + 1;
    for (int& m : membership) m = comm[m];
    Partition level(membership);
    const double q = Modularity(net, level);
    if (q - best_q < kLouvainStop) {
      if (q > best_q) best = std::move(level);
      break;
    }
    best = std::move(level);
    best_q = q;
    g = Coarsen(g, comm, num_comm);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Graph-constrained average-linkage clustering over walk affinities.

// Lexicographic (max, sum) of per-community conductance; cut and vol are
// per community.
std::pair<double, double> ConductanceScore(std::span<const double> cut,
                                           std::span<const double> vol,
                                           double total_vol) {
  double worst = 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < cut.size(); ++c) {
    const double denom = std::min(vol[c], total_vol - vol[c]);
    const double phi = denom > 0.0 ? cut[c] / denom : 1.0;
    worst = std::max(worst, phi);
    sum += phi;
  }
  return {worst, sum};
}

// Moves single boundary nodes to a neighbouring community while that lowers
// (max, sum) conductance and leaves no community empty.
std::vector<int> RefineConductance(const RoadNetwork& net,
                                   std::vector<int> label, int count) {
  std::vector<double> cut(count, 0.0);
  std::vector<double> vol(count, 0.0);
  std::vector<int> size(count, 0);
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    vol[label[v]] += net.degree(v);
    ++size[label[v]];
  }
  for (const Edge& e : net.edges()) {
    if (label[e.u] != label[e.v]) {
      cut[label[e.u]] += 1.0;
      cut[label[e.v]] += 1.0;
    }
  }
  const double total = 2.0 * net.num_edges();
  auto score = ConductanceScore(cut, vol, total);
  constexpr double kTol = 1e-12;
  for (int pass = 0; pass < 100; ++pass) {
    bool moved = false;
    for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
      const int a = label[v];
      if (size[a] == 1) continue;
      const double d = net.degree(v);
      std::vector<std::pair<int, double>> links;  // community, edge count
      for (const Incidence& inc : net.incident(v)) {
        const int c = label[inc.neighbor];
        auto it = std::find_if(links.begin(), links.end(),
                               [&](const auto& l) { return l.first == c; });
        if (it == links.end()) {
          links.emplace_back(c, 1.0);
        } else {
          it->second += 1.0;
        }
      }
      double to_a = 0.0;
      for (const auto& [c, k] : links) {
        if (c == a) to_a = k;
      }
      for (const auto& [b, to_b] : links) {
        if (b == a) continue;
        const double old_a = cut[a];
        const double old_b = cut[b];
        cut[a] = old_a - (d - to_a) + to_a;
        cut[b] = old_b + (d - to_b) - to_b;
        vol[a] -= d;
        vol[b] += d;
        const auto trial = ConductanceScore(cut, vol, total);
        if (trial.first < score.first - kTol ||
            (trial.first <= score.first + kTol &&
             trial.second < score.second - kTol)) {
          score = trial;
          label[v] = b;
          --size[a];
          ++size[b];
          moved = true;
          break;
        }
        vol[a] += d;
        vol[b] -= d;
        cut[a] = old_a;
        cut[b] = old_b;
      }
    }
    if (!moved) break;
  }
  return label;
}

Partition ClusterAffinities(const RoadNetwork& net,
                            const std::vector<double>& affinity,
                            const MixingOptions& options) {
  const int n = net.num_nodes();
  // sum[a][b]: total affinity between clusters a and b (dense, n x n).
  std::vector<double> sum(affinity);
  std::vector<int> size(n, 1);
  std::vector<char> alive(n, 1);
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (const Edge& e : net.edges()) {
    adjacent[e.u][e.v] = adjacent[e.v][e.u] = 1;
  }
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);

  const int lo = std::max(1, options.min_communities);
  const int hi = std::max(lo, options.max_communities);
  Partition best = Partition::Single(n);
  double best_score = std::numeric_limits<double>::infinity();
  auto consider = [&](int count) {
    if (count < lo || count > hi || count < 2) return;
    Partition candidate(
        RefineConductance(net, Partition(label).labels(), count));
    const double score = MaxCommunityConductance(net, candidate);
    // Counts arrive in decreasing order; <= lets the coarser split win ties.
    if (score <= best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  };

  int clusters = n;
  consider(clusters);
  while (clusters > 1) {
    double best_link = -1.0;
    int ba = -1;
    int bb = -1;
    for (int x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      for (int y = x + 1; y < n; ++y) {
        if (!alive[y] || !adjacent[x][y]) continue;
        const double link =
            sum[x * n + y] / (static_cast<double>(size[x]) * size[y]);
        if (link > best_link) {
          best_link = link;
          ba = x;
          bb = y;
        }
      }
    }
    if (ba < 0) break;
    for (int z = 0; z < n; ++z) {
      sum[ba * n + z] += sum[bb * n + z];
      sum[z * n + ba] = sum[ba * n + z];
      adjacent[ba][z] = adjacent[z][ba] = adjacent[ba][z] || adjacent[bb][z];
    }
    adjacent[ba][ba] = 0;
    size[ba] += size[bb];
    alive[bb] = 0;
    for (int& l : label) {
      if (l == bb) l = ba;
    }
    --clusters;
    consider(clusters);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  std::unordered_map<int, int> remap;
  for (int& l : labels_) {
    auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
    l = it->second;
  }
  num_communities_ = static_cast<int>(remap.size());
}

std::vector<std::vector<NodeIndex>> Partition::Communities() const {
  std::vector<std::vector<NodeIndex>> groups(num_communities_);
  for (NodeIndex v = 0; v < num_nodes(); ++v) groups[labels_[v]].push_back(v);
  return groups;
}

double Modularity(const RoadNetwork& net, const Partition& part) {
  if (part.num_nodes() != net.num_nodes()) {
    throw DomainError("partition does not match the network");
  }
  const double m = net.num_edges();
  if (m == 0) return 0.0;
  std::vector<double> inside(part.num_communities(), 0.0);
  std::vector<double> degree(part.num_communities(), 0.0);
  for (const Edge& e : net.edges()) {
    if (part[e.u] == part[e.v]) inside[part[e.u]] += 1.0;
  }
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    degree[part[v]] += net.degree(v);
  }
  double q = 0.0;
  for (int c = 0; c < part.num_communities(); ++c) {
    const double share = degree[c] / (2.0 * m);
    q += inside[c] / m - share * share;
  }
  return q;
}

std::vector<EdgeIndex> PartitionCutset(const RoadNetwork& net,
                                       const Partition& part) {
  if (part.num_nodes() != net.num_nodes()) {
    throw DomainError("partition does not match the network");
  }
  std::vector<EdgeIndex> cut;
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    if (part[net.edge(e).u] != part[net.edge(e).v]) cut.push_back(e);
  }
  return cut;
}

double MaxCommunityConductance(const RoadNetwork& net, const Partition& part) {
  if (part.num_communities() <= 1) return 1.0;
  double worst = 0.0;
  for (const auto& members : part.Communities()) {
    worst = std::max(worst, Conductance(net, members));
  }
  return worst;
}

Partition SpectralBisect(const RoadNetwork& net) {
  const int n = net.num_nodes();
  const double two_m = 2.0 * net.num_edges();
  if (n < 2 || two_m == 0.0) return Partition::Single(n);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      b(i, j) = -static_cast<double>(net.degree(i)) * net.degree(j) / two_m;
    }
  }
  for (const Edge& e : net.edges()) {
    b(e.u, e.v) += 1.0;
    b(e.v, e.u) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("modularity-matrix eigensolver failed", 0.0);
  }
  const double leading = solver.eigenvalues()(n - 1);
  if (leading <= 1e-10) return Partition::Single(n);
  const Eigen::VectorXd v = solver.eigenvectors().col(n - 1);
  constexpr double kZero = 1e-12;
  std::vector<int> labels(n);
  bool any_pos = false;
  bool any_neg = false;
  for (int i = 0; i < n; ++i) {
    labels[i] = v(i) > kZero ? 1 : 0;
    any_pos |= v(i) > kZero;
    any_neg |= v(i) < -kZero;
  }
  if (!any_pos || !any_neg) return Partition::Single(n);
  return Partition(std::move(labels));
}

Partition AgglomerativeModularity(const RoadNetwork& net,
                                  AgglomerativeVariant variant) {
  switch (variant) {
    case AgglomerativeVariant::kGreedy:
      return GreedyMerge(net);
    case AgglomerativeVariant::kHierarchical:
      return Louvain(net);
  }
  throw DomainError("unknown agglomerative variant");
}

std::vector<double> MixingKernel(const RoadNetwork& net) {
  const int n = net.num_nodes();
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
  for (NodeIndex i = 0; i < n; ++i) {
    double out = 0.0;
    for (const Incidence& inc : net.incident(i)) {
      const double w =
          std::min(1.0 / net.degree(i), 1.0 / net.degree(inc.neighbor));
      p[static_cast<std::size_t>(i) * n + inc.neighbor] = w;
      out += w;
    }
    // Clamped: rounding can leave -1 ulp on rows that are already full.
    p[static_cast<std::size_t>(i) * n + i] = std::max(0.0, 1.0 - out);
  }
  return p;
}

Partition MixingPartition(const RoadNetwork& net, const MixingOptions& options,
                          Seed seed) {
  const int n = net.num_nodes();
  int walk_length = options.walk_length;
  if (walk_length == 0) {
    walk_length = static_cast<int>(std::ceil(std::log2(std::max(n, 2)))) + 2;
  }
  if (walk_length < 1 || options.walks_per_node < 1) {
    throw DomainError("mixing walks need walk_length >= 1 and walks >= 1");
  }
  if (n < 2) return Partition::Single(n);

  // Per-node cumulative step distribution: neighbours in incidence order,
  // then the lazy self-loop.
  std::vector<std::vector<std::pair<double, NodeIndex>>> steps(n);
  for (NodeIndex i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const Incidence& inc : net.incident(i)) {
      acc += std::min(1.0 / net.degree(i), 1.0 / net.degree(inc.neighbor));
      steps[i].emplace_back(acc, inc.neighbor);
    }
  }

  std::vector<double> ends(static_cast<std::size_t>(n) * n, 0.0);
  for (NodeIndex start = 0; start < n; ++start) {
    Rng rng = MakeRng(DeriveSeed(seed, static_cast<std::uint64_t>(start)));
    for (int w = 0; w < options.walks_per_node; ++w) {
      NodeIndex cur = start;
      for (int s = 0; s < walk_length; ++s) {
        const double u = UniformUnit(rng);
        for (const auto& [cum, next] : steps[cur]) {
          if (u < cum) {
            cur = next;
            break;
          }
        }
      }
      ends[static_cast<std::size_t>(start) * n + cur] += 1.0;
    }
  }
  const double scale = 1.0 / options.walks_per_node;
  std::vector<double> affinity(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      affinity[static_cast<std::size_t>(i) * n + j] =
          0.5 * scale *
          (ends[static_cast<std::size_t>(i) * n + j] +
           ends[static_cast<std::size_t>(j) * n + i]);
    }
  }
  return ClusterAffinities(net, affinity, options);
}

std::vector<double> VisitFrequencies(const RoadNetwork& net,
                                     const FlowOptions& options, Seed seed) {
  const int n = net.num_nodes();
  const long long walk_length =
      options.walk_length > 0 ? options.walk_length : 100LL * n;
  if (options.num_walks < 1) throw DomainError("flow needs num_walks >= 1");
  std::vector<double> visits(n, 0.0);
  Rng rng = MakeRng(seed);
  for (int w = 0; w < options.num_walks; ++w) {
    NodeIndex cur = static_cast<NodeIndex>(UniformIndex(rng, n));
    for (long long s = 0; s < walk_length; ++s) {
      const int d = net.degree(cur);
      if (d > 0) {
        cur = net.incident(cur)[UniformIndex(rng, d)].neighbor;
      }
      visits[cur] += 1.0;
    }
  }
  const double total = std::accumulate(visits.begin(), visits.end(), 0.0);
  for (double& v : visits) v /= total;
  return visits;
}

double MapEquation(const RoadNetwork& net, std::span<const double> visits,
                   const Partition& part) {
  const int k = part.num_communities();
  std::vector<double> exit(k, 0.0);
  std::vector<double> flow(k, 0.0);
  double node_entropy = 0.0;
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    flow[part[v]] += visits[v];
    node_entropy += PLogP(visits[v]);
  }
  for (const Edge& e : net.edges()) {
    if (part[e.u] == part[e.v]) continue;
    exit[part[e.u]] += visits[e.u] / net.degree(e.u);
    exit[part[e.v]] += visits[e.v] / net.degree(e.v);
  }
  double total_exit = 0.0;
  double exit_terms = 0.0;
  double module_terms = 0.0;
  for (int c = 0; c < k; ++c) {
    total_exit += exit[c];
    exit_terms += PLogP(exit[c]);
    module_terms += PLogP(exit[c] + flow[c]);
  }
  return PLogP(total_exit) - 2.0 * exit_terms - node_entropy + module_terms;
}

namespace {

double EdgeFlow(const RoadNetwork& net, std::span<const double> p,
                NodeIndex from) {
  return p[from] / net.degree(from);
}

// Greedy pairwise merging of adjacent modules, starting from `label`
// (values in [0, n)), while the map equation drops.
void MergeModules(const RoadNetwork& net, std::span<const double> p,
                  std::vector<int>& label) {
  const int n = net.num_nodes();
  std::vector<double> flow(n, 0.0);
  std::vector<double> exit(n, 0.0);
  std::vector<char> alive(n, 0);
  // between[i][j]: flow crossing between modules i and j, both directions.
  std::vector<std::map<int, double>> between(n);
  for (NodeIndex v = 0; v < n; ++v) {
    flow[label[v]] += p[v];
    alive[label[v]] = 1;
  }
  for (const Edge& e : net.edges()) {
    const int cu = label[e.u];
    const int cv = label[e.v];
    if (cu == cv) continue;
    const double fu = EdgeFlow(net, p, e.u);
    const double fv = EdgeFlow(net, p, e.v);
    exit[cu] += fu;
    exit[cv] += fv;
    between[cu][cv] += fu + fv;
    between[cv][cu] += fu + fv;
  }
  double total_exit = std::accumulate(exit.begin(), exit.end(), 0.0);

  while (true) {
    double best = -kGainEpsilon;
    int bi = -1;
    int bj = -1;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (const auto& [j, fij] : between[i]) {
        if (j <= i) continue;
        const double q = std::max(0.0, exit[i] + exit[j] - fij);
        const double pm = flow[i] + flow[j];
        const double delta =
            PLogP(total_exit - fij) - PLogP(total_exit) -
            2.0 * (PLogP(q) - PLogP(exit[i]) - PLogP(exit[j])) +
            (PLogP(q + pm) - PLogP(exit[i] + flow[i]) -
             PLogP(exit[j] + flow[j]));
        if (delta < best) {
          best = delta;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    const double fij = between[bi][bj];
    exit[bi] = std::max(0.0, exit[bi] + exit[bj] - fij);
    flow[bi] += flow[bj];
    total_exit -= fij;
    for (const auto& [k, fjk] : between[bj]) {
      if (k == bi) continue;
      between[bi][k] += fjk;
      between[k][bi] += fjk;
      between[k].erase(bj);
    }
    between[bi].erase(bj);
    between[bj].clear();
    alive[bj] = 0;
    for (int& l : label) {
      if (l == bj) l = bi;
    }
  }
}

// One round of single-node moves into neighbouring modules, in node order,
// repeated until no move lowers the map equation. Returns true if any node
// moved.
bool MoveNodes(const RoadNetwork& net, std::span<const double> p,
               std::span<const NodeIndex> order, std::vector<int>& label) {
  const int n = net.num_nodes();
  bool moved_any = false;
  for (int pass = 0; pass < 100; ++pass) {
    std::vector<double> flow(n, 0.0);
    std::vector<double> exit(n, 0.0);
    for (NodeIndex v = 0; v < n; ++v) flow[label[v]] += p[v];
    for (const Edge& e : net.edges()) {
      if (label[e.u] == label[e.v]) continue;
      exit[label[e.u]] += EdgeFlow(net, p, e.u);
      exit[label[e.v]] += EdgeFlow(net, p, e.v);
    }
    double total = std::accumulate(exit.begin(), exit.end(), 0.0);
    bool moved = false;
    for (NodeIndex v : order) {
      const int a = label[v];
      // Flow from v into each neighbouring module and back.
      std::vector<std::pair<int, std::pair<double, double>>> links;
      double out_all = 0.0;
      for (const Incidence& inc : net.incident(v)) {
        const int c = label[inc.neighbor];
        const double out = EdgeFlow(net, p, v);
        const double in = EdgeFlow(net, p, inc.neighbor);
        out_all += out;
        auto it = std::find_if(links.begin(), links.end(),
                               [&](const auto& l) { return l.first == c; });
        if (it == links.end()) {
          links.push_back({c, {out, in}});
        } else {
          it->second.first += out;
          it->second.second += in;
        }
      }
      double out_a = 0.0;
      double in_a = 0.0;
      for (const auto& [c, f] : links) {
        if (c == a) {
          out_a = f.first;
          in_a = f.second;
        }
      }
      const double qa = std::max(0.0, exit[a] - (out_all - out_a) + in_a);
      const double pa = flow[a] - p[v];
      double best = -kGainEpsilon;
      int target = -1;
      double best_qb = 0.0;
      for (const auto& [b, f] : links) {
        if (b == a) continue;
        const double qb =
            std::max(0.0, exit[b] + (out_all - f.first) - f.second);
        const double pb = flow[b] + p[v];
        const double t = total - exit[a] - exit[b] + qa + qb;
        const double delta =
            PLogP(t) - PLogP(total) -
            2.0 * (PLogP(qa) + PLogP(qb) - PLogP(exit[a]) - PLogP(exit[b])) +
            PLogP(qa + pa) + PLogP(qb + pb) - PLogP(exit[a] + flow[a]) -
            PLogP(exit[b] + flow[b]);
        if (delta < best) {
          best = delta;
          target = b;
          best_qb = qb;
        }
      }
      if (target < 0) continue;
      total = total - exit[a] - exit[target] + qa + best_qb;
      exit[a] = qa;
      exit[target] = best_qb;
      flow[a] = pa;
      flow[target] += p[v];
      label[v] = target;
      moved = true;
    }
    if (!moved) break;
    moved_any = true;
  }
  return moved_any;
}

}  // namespace

Partition FlowPartition(const RoadNetwork& net, const FlowOptions& options,
                        Seed seed) {
  const int n = net.num_nodes();
  const std::vector<double> p = VisitFrequencies(net, options, seed);

  if (options.trials < 1) throw DomainError("flow needs trials >= 1");
  // Each trial moves nodes in its own order; the shortest description
  // wins, earlier trials on ties. Trial 0 uses index order.
  std::vector<int> label;
  double best = std::numeric_limits<double>::infinity();
  Rng order_rng = MakeRng(DeriveSeed(seed, "trials"));
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int trial = 0; trial < options.trials; ++trial) {
    if (trial > 0) {
      for (int i = n - 1; i > 0; --i) {
        std::swap(order[i], order[UniformIndex(order_rng, i + 1)]);
      }
    }
    std::vector<int> candidate(n);
    std::iota(candidate.begin(), candidate.end(), 0);
    // Trial 0 starts from greedy merging; later trials grow modules by
    // local moves from singletons, which reaches different optima.
    if (trial == 0) MergeModules(net, p, candidate);
    // Node moves undo merges that greedy order got wrong; merging again
    // joins modules the moves left adjacent.
    for (int round = 0; round < 50; ++round) {
      if (!MoveNodes(net, p, order, candidate)) break;
      MergeModules(net, p, candidate);
    }
    const double length = MapEquation(net, p, Partition(candidate));
    if (length < best - kGainEpsilon) {
      best = length;
      label = std::move(candidate);
    }
  }

  // Nodes the walks never reached carry no flow; attach each to its
  // smallest-rank neighbour's module.
  for (NodeIndex v = 0; v < n; ++v) {
    if (p[v] > 0.0) continue;
    for (const Incidence& inc : net.incident(v)) {
      if (p[inc.neighbor] > 0.0) {
        label[v] = label[inc.neighbor];
        break;
      }
    }
  }
  return Partition(std::move(label));
}

void WritePartition(const RoadNetwork& net, const Partition& part,
                    std::ostream& out) {
  out << "node_id,community\n";
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    out << net.node(v).id << ',' << part[v] << '\n';
  }
}

}  // namespace ambush
