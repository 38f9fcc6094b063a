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

#include "ambush/road_network.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <utility>

#include "ambush/errors.h"
#include "ambush/io.h"

namespace ambush {
namespace {

constexpr const char* kNodesHeader = "node_id,x,y";
constexpr const char* kEdgesHeader = "edge_id,u,v,length_m,speed_mps";

std::vector<int> RankOf(const std::vector<std::string>& ids) {
  std::vector<int> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<int> rank(ids.size());
  for (int r = 0; r < static_cast<int>(order.size()); ++r) rank[order[r]] = r;
  return rank;
}

void CheckHeader(const std::string& line, const char* expected,
                 const std::string& name, int number) {
  std::string joined;
  for (const auto& f : io::SplitCsv(line)) {
    if (!joined.empty()) joined += ',';
    joined += f;
  }
  if (joined != expected) {
    throw ParseError(name, number,
                     "expected header '" + std::string(expected) + "'");
  }
}

}  // namespace

RoadNetwork RoadNetwork::Build(std::vector<NodeRecord> nodes,
                               std::vector<EdgeRecord> edges,
                               BuildOptions options) {
  RoadNetwork net;
  if (nodes.empty()) throw ValidationError("network has no nodes");

  net.nodes_.reserve(nodes.size());
  for (auto& rec : nodes) {
    if (rec.id.empty()) throw ValidationError("empty node id");
    const auto index = static_cast<NodeIndex>(net.nodes_.size());
    if (!net.node_index_.emplace(rec.id, index).second) {
      throw ValidationError("duplicate node id '" + rec.id + "'");
    }
    net.nodes_.push_back(Node{std::move(rec.id), rec.x, rec.y});
  }

  std::set<std::pair<NodeIndex, NodeIndex>> pairs;
  net.edges_.reserve(edges.size());
  for (auto& rec : edges) {
    if (rec.id.empty()) throw ValidationError("empty edge id");
    auto u = net.node_index_.find(rec.u);
    if (u == net.node_index_.end()) {
      throw ValidationError("edge '" + rec.id + "' references unknown node '" +
                            rec.u + "'");
    }
    auto v = net.node_index_.find(rec.v);
    if (v == net.node_index_.end()) {
      throw ValidationError("edge '" + rec.id + "' references unknown node '" +
                            rec.v + "'");
    }
    if (u->second == v->second) {
      throw ValidationError("edge '" + rec.id + "' is a self-loop on '" +
                            rec.u + "'");
    }
    if (!(rec.length_m > 0.0) || !std::isfinite(rec.length_m)) {
      throw ValidationError("edge '" + rec.id + "' has non-positive length");
    }
    if (!(rec.speed_mps > 0.0) || !std::isfinite(rec.speed_mps)) {
      throw ValidationError("edge '" + rec.id + "' has non-positive speed");
    }
    const double t = rec.length_m / rec.speed_mps;
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw ValidationError("edge '" + rec.id +
                            "' has a degenerate travel time");
    }
    const auto key = std::minmax(u->second, v->second);
    if (!pairs.insert(key).second) {
      throw ValidationError("edge '" + rec.id + "' duplicates the road " +
                            rec.u + "-" + rec.v);
    }
    const auto index = static_cast<EdgeIndex>(net.edges_.size());
    if (!net.edge_index_.emplace(rec.id, index).second) {
      throw ValidationError("duplicate edge id '" + rec.id + "'");
    }
    net.edges_.push_back(Edge{std::move(rec.id), u->second, v->second,
                              rec.length_m, rec.speed_mps});
  }

  std::vector<std::string> ids;
  ids.reserve(net.edges_.size());
  for (const auto& e : net.edges_) ids.push_back(e.id);
  net.edge_rank_ = RankOf(ids);
  ids.clear();
  for (const auto& n : net.nodes_) ids.push_back(n.id);
  net.node_rank_ = RankOf(ids);

  const int n = net.num_nodes();
  net.offsets_.assign(n + 1, 0);
  for (const auto& e : net.edges_) {
    ++net.offsets_[e.u + 1];
    ++net.offsets_[e.v + 1];
  }
  std::partial_sum(net.offsets_.begin(), net.offsets_.end(),
                   net.offsets_.begin());
  net.incidence_.resize(net.offsets_[n]);
  std::vector<int> fill(net.offsets_.begin(), net.offsets_.end() - 1);
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    const Edge& edge = net.edges_[e];
    net.incidence_[fill[edge.u]++] = Incidence{e, edge.v};
    net.incidence_[fill[edge.v]++] = Incidence{e, edge.u};
  }
  for (NodeIndex v = 0; v < n; ++v) {
    std::sort(net.incidence_.begin() + net.offsets_[v],
              net.incidence_.begin() + net.offsets_[v + 1],
              [&](const Incidence& a, const Incidence& b) {
                return net.edge_rank_[a.edge] < net.edge_rank_[b.edge];
              });
  }

  if (options.require_connected && !net.IsConnected()) {
    throw ValidationError("road network is disconnected");
  }
  return net;
}

std::optional<NodeIndex> RoadNetwork::FindNode(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> RoadNetwork::FindEdge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex RoadNetwork::NodeAt(const std::string& id) const {
  auto n = FindNode(id);
  if (!n) throw DomainError("unknown node '" + id + "'");
  return *n;
}

EdgeIndex RoadNetwork::EdgeAt(const std::string& id) const {
  auto e = FindEdge(id);
  if (!e) throw DomainError("unknown edge '" + id + "'");
  return *e;
}

EdgeIndex RoadNetwork::EdgeBetween(NodeIndex u, NodeIndex v) const {
  for (const Incidence& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return kNoEdge;
}

std::vector<double> RoadNetwork::TravelTimes() const {
  std::vector<double> times(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    times[e] = edges_[e].travel_time();
  }
  return times;
}

bool RoadNetwork::IsConnected() const {
  const int n = num_nodes();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++count;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return count == n;
}

bool RoadNetwork::operator==(const RoadNetwork& other) const {
  if (nodes_.size() != other.nodes_.size() ||
      edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (a.id != b.id || a.x != b.x || a.y != b.y) return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.id != b.id || a.u != b.u || a.v != b.v || a.length_m != b.length_m ||
        a.speed_mps != b.speed_mps) {
      return false;
    }
  }
  return incidence_.size() == other.incidence_.size() &&
         std::equal(incidence_.begin(), incidence_.end(),
                    other.incidence_.begin(),
                    [](const Incidence& a, const Incidence& b) {
                      return a.edge == b.edge && a.neighbor == b.neighbor;
                    });
}

RoadNetwork ReadNetwork(std::istream& nodes_in, std::istream& edges_in,
                        const std::string& nodes_name,
                        const std::string& edges_name) {
  std::vector<NodeRecord> nodes;
  bool header = true;
  io::ForEachLine(nodes_in, [&](int number, const std::string& line) {
    if (header) {
      CheckHeader(line, kNodesHeader, nodes_name, number);
      header = false;
      return;
    }
    const auto f = io::SplitCsv(line);
    if (f.size() != 3) {
      throw ParseError(nodes_name, number, "expected 3 fields");
    }
    NodeRecord rec{f[0], 0.0, 0.0};
    if (rec.id.empty()) throw ParseError(nodes_name, number, "empty node_id");
    if (!io::ParseDouble(f[1], &rec.x) || !io::ParseDouble(f[2], &rec.y)) {
      throw ParseError(nodes_name, number, "bad coordinate");
    }
    nodes.push_back(std::move(rec));
  });
  if (header) throw ParseError(nodes_name, 0, "missing header");

  std::vector<EdgeRecord> edges;
  header = true;
  io::ForEachLine(edges_in, [&](int number, const std::string& line) {
    if (header) {
      CheckHeader(line, kEdgesHeader, edges_name, number);
      header = false;
      return;
    }
    const auto f = io::SplitCsv(line);
    if (f.size() != 5) {
      throw ParseError(edges_name, number, "expected 5 fields");
    }
    EdgeRecord rec{f[0], f[1], f[2], 0.0, 0.0};
    if (rec.id.empty()) throw ParseError(edges_name, number, "empty edge_id");
    if (!io::ParseDouble(f[3], &rec.length_m)) {
      throw ParseError(edges_name, number, "bad length_m");
    }
    if (!io::ParseDouble(f[4], &rec.speed_mps)) {
      throw ParseError(edges_name, number, "bad speed_mps");
    }
    edges.push_back(std::move(rec));
  });
  if (header) throw ParseError(edges_name, 0, "missing header");

  return RoadNetwork::Build(std::move(nodes), std::move(edges));
}

RoadNetwork LoadNetwork(const std::filesystem::path& nodes_file,
                        const std::filesystem::path& edges_file) {
  auto nodes = io::OpenForRead(nodes_file);
  auto edges = io::OpenForRead(edges_file);
  return ReadNetwork(nodes, edges, nodes_file.string(), edges_file.string());
}

void WriteNodes(const RoadNetwork& net, std::ostream& out) {
  out << kNodesHeader << '\n';
  for (const Node& n : net.nodes()) {
    out << n.id << ',' << io::FormatDouble(n.x) << ',' << io::FormatDouble(n.y)
        << '\n';
  }
}

void WriteEdges(const RoadNetwork& net, std::ostream& out) {
  out << kEdgesHeader << '\n';
  for (const Edge& e : net.edges()) {
    out << e.id << ',' << net.node(e.u).id << ',' << net.node(e.v).id << ','
        << io::FormatDouble(e.length_m) << ',' << io::FormatDouble(e.speed_mps)
        << '\n';
  }
}

void SaveNetwork(const RoadNetwork& net,
                 const std::filesystem::path& nodes_file,
                 const std::filesystem::path& edges_file) {
  auto nodes = io::OpenForWrite(nodes_file);
  WriteNodes(net, nodes);
  auto edges = io::OpenForWrite(edges_file);
  WriteEdges(net, edges);
}

void WriteEdgeIds(const RoadNetwork& net, std::span<const EdgeIndex> edges,
                  std::ostream& out) {
  out << "edge_id\n";
  for (EdgeIndex e : edges) out << net.edge(e).id << '\n';
}

std::vector<EdgeIndex> ReadEdgeIds(const RoadNetwork& net, std::istream& in,
                                   const std::string& name) {
  std::vector<EdgeIndex> edges;
  std::set<EdgeIndex> seen;
  bool header = true;
  io::ForEachLine(in, [&](int number, const std::string& line) {
    const std::string id = io::Trim(line);
    if (header) {
      if (id != "edge_id") throw ParseError(name, number, "expected 'edge_id'");
      header = false;
      return;
    }
    auto e = net.FindEdge(id);
    if (!e) throw ParseError(name, number, "unknown edge '" + id + "'");
    if (!seen.insert(*e).second) {
      throw ParseError(name, number, "duplicate edge '" + id + "'");
    }
    edges.push_back(*e);
  });
  if (header) throw ParseError(name, 0, "missing header");
  return edges;
}

}  // namespace ambush
