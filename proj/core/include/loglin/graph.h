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

#ifndef LOGLIN_GRAPH_H_
#define LOGLIN_GRAPH_H_

#include <utility>
#include <vector>

#include "loglin/profile.h"

namespace loglin {

// Simple undirected graph on nodes 0..n-1. Duplicate edges are merged.
class Graph {
 public:
  Graph(int num_nodes, std::vector<std::pair<int, int>> edges);

  static Graph Empty(int num_nodes);
  static Graph Ring(int num_nodes);
  static Graph Line(int num_nodes);
  static Graph Complete(int num_nodes);

  int num_nodes() const { return n_; }
  // Edges with first < second, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  int degree(int node) const {
    return static_cast<int>(adjacency_[node].size());
  }

  // |N_i(x)|: neighbors of `node` whose action in `profile` equals `action`.
  int CountNeighborsPlaying(int node, const ActionProfile& profile,
                            int action) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace loglin

#endif  // LOGLIN_GRAPH_H_
