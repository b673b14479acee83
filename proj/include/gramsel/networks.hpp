// Copyright 2026 The Authors.
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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gramsel/rng.hpp"
#include "gramsel/system.hpp"

namespace gramsel {

// Rightmost eigenvalue real part after stabilization.
inline constexpr double kTargetAbscissa = -0.05;

enum class GraphKind { kErdosRenyi, kBarabasiAlbert, kLMesh, kRandomStable };

struct GraphSpec {
  GraphKind kind = GraphKind::kErdosRenyi;
  std::size_t n = 50;
  std::uint64_t seed = 0;
  double p = 0.08;            // Erdos-Renyi edge probability
  int m_attach = 2;           // Barabasi-Albert edges per new node
  int arm_width = 3;          // L-mesh arm thickness
  int arm_len = 0;            // L-mesh bounding square side; 0 = smallest fitting n
  bool symmetric_weights = false;

  void validate() const;
};

using Edge = std::pair<int, int>;  // undirected, first < second

struct WeightedNetwork {
  Matrix a;
  std::vector<Edge> edges;
  double shift = 0.0;  // sigma subtracted from the diagonal
  std::vector<std::string> warnings;
};

// Unweighted structure, one standard-normal weight per structural nonzero
// (two per undirected edge unless symmetric_weights), zero structural
// diagonal, then A -= sigma I with sigma = abscissa(A) + 0.05.
WeightedNetwork generate(const GraphSpec& spec);

// Dense standard-normal A (diagonal included), shifted the same way.
WeightedNetwork random_stable(std::size_t n, std::uint64_t seed);

// Edge sets of the structural models, exposed for tests.
std::vector<Edge> erdos_renyi_edges(std::size_t n, double p, Rng& rng);
std::vector<Edge> barabasi_albert_edges(std::size_t n, int m_attach, Rng& rng);
// Grid cells (r, c) of an arm_len x arm_len square with r < arm_width or
// c < arm_width, row-major, trimmed from the tip of the horizontal arm down
// to n nodes; 4-neighbour edges.
std::vector<Edge> l_mesh_edges(std::size_t n, int arm_len, int arm_width);
int l_mesh_side(std::size_t n, int arm_width);

bool is_connected(std::size_t n, const std::vector<Edge>& edges);

// Instance with standard-basis candidates plus "adjacency" and "shift".
nlohmann::json network_instance_json(const WeightedNetwork& net, double epsilon);

std::string_view graph_kind_name(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);  // er | ba | lmesh | rss

}  // namespace gramsel
