// Copyright 2026 The loglin Authors. All rights reserved.
//
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

#include "loglin/graph.h"

#include <algorithm>
#include <string>

#include "loglin/errors.h"

namespace loglin {

Graph::Graph(int num_nodes, std::vector<std::pair<int, int>> edges)
    : n_(num_nodes), adjacency_(num_nodes) {
  if (num_nodes < 1) throw DimensionError("a graph needs at least one node");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw DimensionError("edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ") references a missing node");
    }
    if (u == v) throw ParameterError("self-loops are not allowed");
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

Graph Graph::Empty(int num_nodes) { return Graph(num_nodes, {}); }

Graph Graph::Ring(int num_nodes) {
  std::vector<std::pair<int, int>> edges;
  if (num_nodes == 2) {
    edges.emplace_back(0, 1);
  } else if (num_nodes > 2) {
    for (int i = 0; i < num_nodes; ++i) {
      edges.emplace_back(i, (i + 1) % num_nodes);
    }
  }
  return Graph(num_nodes, std::move(edges));
}

Graph Graph::Line(int num_nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < num_nodes; ++i) edges.emplace_back(i, i + 1);
  return Graph(num_nodes, std::move(edges));
}

Graph Graph::Complete(int num_nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) {
    for (int j = i + 1; j < num_nodes; ++j) edges.emplace_back(i, j);
  }
  return Graph(num_nodes, std::move(edges));
}

int Graph::CountNeighborsPlaying(int node, const ActionProfile& profile,
                                 int action) const {
  if (profile.size() != n_) {
    throw DimensionError("profile size does not match graph");
  }
  int count = 0;
  for (int j : adjacency_[node]) {
    if (profile[j] == action) ++count;
  }
  return count;
}

}  // namespace loglin
