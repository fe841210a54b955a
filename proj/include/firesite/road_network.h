// Copyright 2026 The Firesite Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FIRESITE_ROAD_NETWORK_H_
#define FIRESITE_ROAD_NETWORK_H_

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace firesite {

struct RoadNode {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  bool terminal = false;
};

struct RoadEdge {
  std::string id;
  std::string from;
  std::string to;
  // Full vertex list from `from` to `to`, endpoints included.
  std::vector<std::array<double, 2>> polyline;
  double length = 0.0;
};

// Undirected road graph in planar kilometers. A junction is a node of degree
// three or more, or a node explicitly marked terminal.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  // Fills in straight polylines for edges without one and computes lengths.
  // Throws ValidationError on dangling endpoints or mismatched polylines.
  RoadNetwork(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges);

  const std::vector<RoadNode>& nodes() const { return nodes_; }
  const std::vector<RoadEdge>& edges() const { return edges_; }
  std::size_t NodeIndex(const std::string& id) const;
  std::size_t Degree(std::size_t node) const { return adjacency_[node].size(); }
  bool IsJunction(std::size_t node) const;
  std::size_t EdgeFrom(std::size_t edge) const { return edge_from_[edge]; }
  std::size_t EdgeTo(std::size_t edge) const { return edge_to_[edge]; }

  // Position at arc length `s` from the edge's `from` node.
  std::array<double, 2> PointAlong(std::size_t edge, double s) const;

  struct Snap {
    std::size_t edge = 0;
    double offset = 0.0;  // arc length from the edge's `from` node
    double access = 0.0;  // straight-line distance from the query point
  };
  // Nearest point on any edge polyline. Requires at least one edge.
  Snap SnapPoint(double x, double y) const;

  // Dijkstra over edge lengths; unreachable nodes get +infinity.
  std::vector<double> ShortestPathsFrom(std::size_t node) const;

  nlohmann::json ToJson() const;
  static RoadNetwork FromJson(const nlohmann::json& doc);

 private:
  std::vector<RoadNode> nodes_;
  std::vector<RoadEdge> edges_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::vector<std::size_t> edge_from_;
  std::vector<std::size_t> edge_to_;
  // (neighbor node, edge index) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

}  // namespace firesite

#endif  // FIRESITE_ROAD_NETWORK_H_
