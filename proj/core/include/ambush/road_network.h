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

#ifndef AMBUSH_ROAD_NETWORK_H_
#define AMBUSH_ROAD_NETWORK_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ambush {

using NodeIndex = std::int32_t;
using EdgeIndex = std::int32_t;

inline constexpr NodeIndex kNoNode = -1;
inline constexpr EdgeIndex kNoEdge = -1;

struct Node {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  std::string id;
  NodeIndex u = kNoNode;
  NodeIndex v = kNoNode;
  double length_m = 0.0;
  double speed_mps = 0.0;

  double travel_time() const { return length_m / speed_mps; }
  NodeIndex Other(NodeIndex n) const { return n == u ? v : u; }
};

// Endpoint-as-seen-from-a-node entry of the incidence map.
struct Incidence {
  EdgeIndex edge;
  NodeIndex neighbor;
};

// Raw rows as they appear in the node/edge files, endpoints by id.
struct NodeRecord {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};
struct EdgeRecord {
  std::string id;
  std::string u;
  std::string v;
  double length_m = 0.0;
  double speed_mps = 0.0;
};

struct BuildOptions {
  // The file loader always enforces connectivity. Turning this off is for
  // analysis fixtures (e.g. modularity of disjoint components) only.
  bool require_connected = true;
};

// Weighted undirected simple road graph. Immutable after construction.
//
// Node and edge indices follow file order. Every incidence list is sorted by
// edge-id rank so that traversal order, and therefore every tie-break in the
// library, depends on ids rather than on file layout.
class RoadNetwork {
 public:
  // Validates and builds. Throws ValidationError on dangling endpoints,
  // duplicate ids, self-loops, parallel edges, non-positive length or speed,
  // non-finite travel time, or (by default) a disconnected graph.
  static RoadNetwork Build(std::vector<NodeRecord> nodes,
                           std::vector<EdgeRecord> edges,
                           BuildOptions options = {});

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Node& node(NodeIndex n) const { return nodes_[n]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Incidence> incident(NodeIndex n) const {
    return {incidence_.data() + offsets_[n],
            incidence_.data() + offsets_[n + 1]};
  }
  int degree(NodeIndex n) const { return offsets_[n + 1] - offsets_[n]; }

  std::optional<NodeIndex> FindNode(const std::string& id) const;
  std::optional<EdgeIndex> FindEdge(const std::string& id) const;
  // Throwing lookups; the message names the missing id.
  NodeIndex NodeAt(const std::string& id) const;
  EdgeIndex EdgeAt(const std::string& id) const;
  // kNoEdge when u and v are not adjacent.
  EdgeIndex EdgeBetween(NodeIndex u, NodeIndex v) const;

  // Position of the edge in the lexicographic order of edge ids.
  int edge_rank(EdgeIndex e) const { return edge_rank_[e]; }
  // Position of the node in the lexicographic order of node ids.
  int node_rank(NodeIndex n) const { return node_rank_[n]; }

  // Per-edge length / speed, indexed by EdgeIndex.
  std::vector<double> TravelTimes() const;

  bool IsConnected() const;

  bool operator==(const RoadNetwork& other) const;

 private:
  RoadNetwork() = default;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Incidence> incidence_;
  std::vector<int> edge_rank_;
  std::vector<int> node_rank_;
  std::unordered_map<std::string, NodeIndex> node_index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
};

// Reads `node_id,x,y` and `edge_id,u,v,length_m,speed_mps` files. Parse
// failures raise ParseError with the offending line; invariant violations
// raise ValidationError.
RoadNetwork LoadNetwork(const std::filesystem::path& nodes_file,
                        const std::filesystem::path& edges_file);
RoadNetwork ReadNetwork(std::istream& nodes, std::istream& edges,
                        const std::string& nodes_name = "nodes",
                        const std::string& edges_name = "edges");

void WriteNodes(const RoadNetwork& net, std::ostream& out);
void WriteEdges(const RoadNetwork& net, std::ostream& out);
void SaveNetwork(const RoadNetwork& net,
                 const std::filesystem::path& nodes_file,
                 const std::filesystem::path& edges_file);

// Edge-id list as emitted/consumed by the attack plan export.
void WriteEdgeIds(const RoadNetwork& net, std::span<const EdgeIndex> edges,
                  std::ostream& out);
std::vector<EdgeIndex> ReadEdgeIds(const RoadNetwork& net, std::istream& in,
                                   const std::string& name = "plan");

}  // namespace ambush

#endif  // AMBUSH_ROAD_NETWORK_H_
