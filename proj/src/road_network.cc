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

#include "firesite/road_network.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "firesite/error.h"

namespace firesite {
namespace {

double SegmentLength(const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
  return std::hypot(b[0] - a[0], b[1] - a[1]);
}

bool Near(const std::array<double, 2>& p, const RoadNode& n) {
  return std::abs(p[0] - n.x) <= 1e-6 && std::abs(p[1] - n.y) <= 1e-6;
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<RoadNode> nodes,
                         std::vector<RoadEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i].x) || !std::isfinite(nodes_[i].y)) {
      throw ValidationError("road node '" + nodes_[i].id +
                            "' has a non-finite coordinate");
    }
    if (!node_index_.emplace(nodes_[i].id, i).second) {
      throw ValidationError("duplicate road node id '" + nodes_[i].id + "'");
    }
  }
  adjacency_.resize(nodes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    RoadEdge& edge = edges_[e];
    auto from = node_index_.find(edge.from);
    auto to = node_index_.find(edge.to);
    if (from == node_index_.end() || to == node_index_.end()) {
      throw ValidationError("road edge '" + edge.id +
                            "' references an unknown node");
    }
    const RoadNode& a = nodes_[from->second];
    const RoadNode& b = nodes_[to->second];
    if (edge.polyline.empty()) {
      edge.polyline = {{a.x, a.y}, {b.x, b.y}};
    }
    if (edge.polyline.size() < 2 || !Near(edge.polyline.front(), a) ||
        !Near(edge.polyline.back(), b)) {
      throw ValidationError("road edge '" + edge.id +
                            "' polyline must run from its first to its second "
                            "endpoint");
    }
    edge.length = 0.0;
    for (std::size_t k = 1; k < edge.polyline.size(); ++k) {
      edge.length += SegmentLength(edge.polyline[k - 1], edge.polyline[k]);
    }
    edge_from_.push_back(from->second);
    edge_to_.push_back(to->second);
    adjacency_[from->second].emplace_back(to->second, e);
    adjacency_[to->second].emplace_back(from->second, e);
  }
}

std::size_t RoadNetwork::NodeIndex(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw ValidationError("unknown road node '" + id + "'");
  }
  return it->second;
}

bool RoadNetwork::IsJunction(std::size_t node) const {
  return nodes_[node].terminal || adjacency_[node].size() >= 3;
}

std::array<double, 2> RoadNetwork::PointAlong(std::size_t edge,
                                              double s) const {
  const auto& line = edges_[edge].polyline;
  double remaining = s;
  for (std::size_t k = 1; k < line.size(); ++k) {
    const double seg = SegmentLength(line[k - 1], line[k]);
    if (remaining <= seg || k + 1 == line.size()) {
      const double t = seg > 0.0 ? std::min(remaining / seg, 1.0) : 0.0;
      return {line[k - 1][0] + t * (line[k][0] - line[k - 1][0]),
              line[k - 1][1] + t * (line[k][1] - line[k - 1][1])};
    }
    remaining -= seg;
  }
  return line.back();
}

RoadNetwork::Snap RoadNetwork::SnapPoint(double x, double y) const {
  Snap best;
  best.access = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& line = edges_[e].polyline;
    double walked = 0.0;
    for (std::size_t k = 1; k < line.size(); ++k) {
      const double dx = line[k][0] - line[k - 1][0];
      const double dy = line[k][1] - line[k - 1][1];
      const double len2 = dx * dx + dy * dy;
      double t = 0.0;
      if (len2 > 0.0) {
        t = ((x - line[k - 1][0]) * dx + (y - line[k - 1][1]) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
      }
      const double px = line[k - 1][0] + t * dx;
      const double py = line[k - 1][1] + t * dy;
      const double access = std::hypot(x - px, y - py);
      if (access < best.access) {
        best.edge = e;
        best.offset = walked + t * std::sqrt(len2);
        best.access = access;
      }
      walked += std::sqrt(len2);
    }
  }
  return best;
}

std::vector<double> RoadNetwork::ShortestPathsFrom(std::size_t node) const {
  std::vector<double> dist(nodes_.size(),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[node] = 0.0;
  queue.emplace(0.0, node);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (auto [v, e] : adjacency_[u]) {
      const double nd = d + edges_[e].length;
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }
  return dist;
}

nlohmann::json RoadNetwork::ToJson() const {
  nlohmann::json doc;
  doc["nodes"] = nlohmann::json::array();
  for (const RoadNode& n : nodes_) {
    nlohmann::json node = {{"id", n.id}, {"x", n.x}, {"y", n.y}};
    if (n.terminal) node["terminal"] = true;
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = nlohmann::json::array();
  for (const RoadEdge& e : edges_) {
    nlohmann::json line = nlohmann::json::array();
    for (const auto& p : e.polyline) line.push_back({p[0], p[1]});
    doc["edges"].push_back(
        {{"id", e.id}, {"from", e.from}, {"to", e.to}, {"polyline", line}});
  }
  return doc;
}

RoadNetwork RoadNetwork::FromJson(const nlohmann::json& doc) {
  try {
    std::vector<RoadNode> nodes;
    for (const auto& n : doc.at("nodes")) {
      nodes.push_back({n.at("id").get<std::string>(), n.at("x").get<double>(),
                       n.at("y").get<double>(), n.value("terminal", false)});
    }
    std::vector<RoadEdge> edges;
    for (const auto& e : doc.at("edges")) {
      RoadEdge edge;
      edge.id = e.at("id").get<std::string>();
      edge.from = e.at("from").get<std::string>();
      edge.to = e.at("to").get<std::string>();
      if (e.contains("polyline")) {
        for (const auto& p : e.at("polyline")) {
          edge.polyline.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
      }
      edges.push_back(std::move(edge));
    }
    return RoadNetwork(std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("road network: ") + ex.what());
  }
}

}  // namespace firesite
