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

// Experiment orchestration. Instance i of network kind c gets the seed
// derive_seed(derive_seed(master, c), i), so every row is reproducible on its
// own and the reports do not depend on the worker count. Report JSON holds
// no timing; wall-clock time is returned separately.

#include <cstdint>
#include <string>
#include <vector>

#include "gramsel/estimators.hpp"
#include "gramsel/networks.hpp"
#include "gramsel/selection.hpp"

namespace gramsel {

inline constexpr double kExperimentEpsilon = 1e-6;

struct EnsembleSpec {
  GraphSpec graph;  // seed is ignored; derived per instance
  std::size_t instances = 1;
};

std::uint64_t instance_seed(std::uint64_t master, std::size_t kind_index, std::size_t instance);

// ---------------------------------------------------------------------------
// Empirical ratio table.

struct Table1Config {
  std::vector<EnsembleSpec> ensembles;
  MetricKind metric = MetricKind::kNegTraceInv;
  std::uint64_t pairs = 5000;
  double epsilon = kExperimentEpsilon;
  std::uint64_t master_seed = 0;
  int jobs = 1;

  // ER(0.08), BA(2) and the L-mesh, n = 50, one instance each.
  static Table1Config defaults();
};

struct Table1Row {
  std::string network;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  GammaEstimate gamma;
  AlphaEstimate alpha;
};

struct Table1Aggregate {
  std::string network;
  double gamma_emp = 1.0;  // min over instances
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double alpha_avg = 0.0;  // mean of per-instance averages
  std::uint64_t violations = 0;
};

struct Table1Report {
  Table1Config config;
  std::vector<Table1Row> rows;
  std::vector<Table1Aggregate> table;
  double runtime_seconds = 0.0;
};

Table1Report run_table1(const Table1Config& config);
std::vector<Table1Aggregate> aggregate_table1(const std::vector<Table1Row>& rows);

// ---------------------------------------------------------------------------
// Greedy against brute force.

struct OptimalityConfig {
  std::vector<EnsembleSpec> ensembles;
  std::vector<MetricKind> metrics{MetricKind::kLambdaMin, MetricKind::kNegTraceInv};
  int k = 4;
  double epsilon = kExperimentEpsilon;
  std::uint64_t master_seed = 0;
  int jobs = 1;

  // Random stable, ER and BA with n = 16, `instances` each.
  static OptimalityConfig defaults(std::size_t instances = 500);
};

struct OptimalityRow {
  std::string network;
  MetricKind metric = MetricKind::kLambdaMin;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::vector<int> greedy_picks;
  double f_empty = 0.0;
  double f_greedy = 0.0;
  std::vector<int> optimal_set;
  double f_opt = 0.0;
  double ratio = 1.0;
  bool exact = false;
};

struct OptimalityAggregate {
  std::string network;  // "all" for the joint row of a metric
  MetricKind metric = MetricKind::kLambdaMin;
  std::size_t count = 0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double exact_fraction = 0.0;
};

struct OptimalityReport {
  OptimalityConfig config;
  std::vector<OptimalityRow> rows;
  std::vector<OptimalityAggregate> summary;
  double runtime_seconds = 0.0;
};

OptimalityReport run_optimality_study(const OptimalityConfig& config);
std::vector<OptimalityAggregate> aggregate_optimality(const std::vector<OptimalityRow>& rows,
                                                      const std::vector<MetricKind>& metrics);

// ---------------------------------------------------------------------------
// Figure data: nodes with a selected flag plus the edge list.

nlohmann::json emit_selection_figure_data(const WeightedNetwork& net,
                                          const SelectionReport& report);
std::string figure_nodes_csv(const nlohmann::json& figure);

// ---------------------------------------------------------------------------
// Serialization.

nlohmann::json to_json(const GammaEstimate& g);
nlohmann::json to_json(const AlphaEstimate& a);
nlohmann::json to_json(const RatioEstimate& r);
nlohmann::json to_json(const SelectionReport& r);
nlohmann::json to_json(const Table1Report& r);
nlohmann::json to_json(const OptimalityReport& r);
std::string table1_csv(const Table1Report& r);
std::string optimality_csv(const OptimalityReport& r);

std::string ensemble_label(const GraphSpec& g);

}  // namespace gramsel
