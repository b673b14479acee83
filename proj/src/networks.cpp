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

#include "gramsel/networks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"

namespace gramsel {
namespace {

constexpr int kMaxShiftPasses = 4;

// A -= sigma I until the abscissa sits on the target.
double stabilize(Matrix& a) {
  double total = 0.0;
  for (int pass = 0; pass < kMaxShiftPasses; ++pass) {
    const double sigma = spectral_abscissa(a) - kTargetAbscissa;
    if (pass > 0 && std::abs(sigma) <= 1e-12) break;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= sigma;
    total += sigma;
  }
  return total;
}

}  // namespace

void GraphSpec::validate() const {
  if (n < 2 && kind != GraphKind::kRandomStable) {
    throw InvalidArgument("graph models need n >= 2");
  }
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (kind == GraphKind::kErdosRenyi && !(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("edge probability must lie in [0, 1]");
  }
  if (kind == GraphKind::kBarabasiAlbert && m_attach < 1) {
    throw InvalidArgument("Barabasi-Albert attachment count must be >= 1");
  }
  if (kind == GraphKind::kLMesh && arm_width < 1) {
    throw InvalidArgument("L-mesh arm width must be >= 1");
  }
}

std::vector<Edge> erdos_renyi_edges(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      if (coin(rng) < p) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::vector<Edge> barabasi_albert_edges(std::size_t n, int m_attach, Rng& rng) {
  const int total = static_cast<int>(n);
  const int seed_size = std::min(total, m_attach + 1);
  std::vector<Edge> edges;
  // Every edge endpoint once: uniform draws from this list are degree-proportional.
  std::vector<int> endpoints;
  for (int i = 0; i < seed_size; ++i) {
    for (int j = i + 1; j < seed_size; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  for (int v = seed_size; v < total; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < m_attach) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      targets.insert(endpoints[pick(rng)]);
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

int l_mesh_side(std::size_t n, int arm_width) {
  const auto count = [&](long side) {
    const long inner = std::max(0L, side - arm_width);
    return side * side - inner * inner;
  };
  long side = 1;
  while (count(side) < static_cast<long>(n)) ++side;
  return static_cast<int>(side);
}

std::vector<Edge> l_mesh_edges(std::size_t n, int arm_len, int arm_width) {
  if (arm_len <= 0) arm_len = l_mesh_side(n, arm_width);
  std::vector<std::pair<int, int>> cells;  // (r, c)
  for (int r = 0; r < arm_len; ++r) {
    for (int c = 0; c < arm_len; ++c) {
      if (r < arm_width || c < arm_width) cells.emplace_back(r, c);
    }
  }
  if (cells.size() < n) {
    throw InvalidArgument("L-mesh with side " + std::to_string(arm_len) + " and arm width " +
                          std::to_string(arm_width) + " has only " +
                          std::to_string(cells.size()) + " nodes");
  }
  // Trim from the tip of the horizontal arm: largest column first, bottom-up.
  std::vector<std::pair<int, int>> order = cells;
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first > y.first;
  });
  std::set<std::pair<int, int>> removed(order.begin(),
                                        order.begin() + static_cast<long>(cells.size() - n));
  std::erase_if(cells, [&](const auto& cell) { return removed.count(cell) > 0; });

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const int dr = std::abs(cells[i].first - cells[j].first);
      const int dc = std::abs(cells[i].second - cells[j].second);
      if (dr + dc == 1) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return edges;
}

bool is_connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::size_t components = n;
  for (const auto& [i, j] : edges) {
    const int ri = find(i), rj = find(j);
    if (ri != rj) {
      parent[static_cast<std::size_t>(ri)] = rj;
      --components;
    }
  }
  return components == 1;
}

WeightedNetwork generate(const GraphSpec& spec) {
  spec.validate();
  if (spec.kind == GraphKind::kRandomStable) return random_stable(spec.n, spec.seed);

  Rng rng(spec.seed);
  WeightedNetwork net;
  switch (spec.kind) {
    case GraphKind::kErdosRenyi: {
      net.edges = erdos_renyi_edges(spec.n, spec.p, rng);
      const double threshold = std::log(static_cast<double>(spec.n)) / static_cast<double>(spec.n);
      if (spec.p <= threshold) {
        std::ostringstream msg;
        msg << "edge probability " << spec.p << " is at or below the connectivity threshold ln(n)/n = "
            << threshold;
        net.warnings.push_back(msg.str());
      }
      break;
    }
    case GraphKind::kBarabasiAlbert:
      net.edges = barabasi_albert_edges(spec.n, spec.m_attach, rng);
      break;
    case GraphKind::kLMesh:
      net.edges = l_mesh_edges(spec.n, spec.arm_len, spec.arm_width);
      break;
    case GraphKind::kRandomStable:
      break;
  }
  if (!is_connected(spec.n, net.edges)) net.warnings.push_back("generated graph is disconnected");

  net.a = Matrix(spec.n, spec.n);
  std::normal_distribution<double> weight(0.0, 1.0);
  for (const auto& [i, j] : net.edges) {
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    net.a(ui, uj) = weight(rng);
    net.a(uj, ui) = spec.symmetric_weights ? net.a(ui, uj) : weight(rng);
  }
  net.shift = stabilize(net.a);
  return net;
}

WeightedNetwork random_stable(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  Rng rng(seed);
  std::normal_distribution<double> weight(0.0, 1.0);
  WeightedNetwork net;
  net.a = Matrix(n, n);
  for (double& v : net.a.data()) v = weight(rng);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) net.edges.emplace_back(i, j);
  }
  net.shift = stabilize(net.a);
  return net;
}

nlohmann::json network_instance_json(const WeightedNetwork& net, double epsilon) {
  LinearSystem sys;
  sys.a = net.a;
  sys.candidates = LinearSystem::standard_basis(net.a.rows());
  sys.epsilon = epsilon;
  nlohmann::json j = instance_to_json(sys);
  j["adjacency"] = net.edges;
  j["shift"] = net.shift;
  if (!net.warnings.empty()) j["warnings"] = net.warnings;
  return j;
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kErdosRenyi: return "er";
    case GraphKind::kBarabasiAlbert: return "ba";
    case GraphKind::kLMesh: return "lmesh";
    case GraphKind::kRandomStable: return "rss";
  }
  return "unknown";
}

GraphKind parse_graph_kind(std::string_view name) {
  for (GraphKind k : {GraphKind::kErdosRenyi, GraphKind::kBarabasiAlbert, GraphKind::kLMesh,
                      GraphKind::kRandomStable}) {
    if (graph_kind_name(k) == name) return k;
  }
  throw InvalidArgument("unknown network kind '" + std::string(name) +
                        "' (expected er|ba|lmesh|rss)");
}

}  // namespace gramsel
