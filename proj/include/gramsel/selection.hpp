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
#include <functional>
#include <optional>
#include <vector>

#include "gramsel/metrics.hpp"

namespace gramsel {

struct Optimum {
  ActuatorSet set;
  double value = 0.0;
};

struct SelectionReport {
  MetricKind metric = MetricKind::kTrace;
  std::vector<int> picks;      // in pick order
  std::vector<double> values;  // f after each pick; values[0] = f(empty)
  std::optional<Optimum> optimum;
  std::optional<double> ratio;  // normalized greedy / optimal
  std::uint64_t evaluations = 0;

  ActuatorSet selected() const { return ActuatorSet(picks); }
  double final_value() const { return values.back(); }
};

struct BruteForceOptions {
  std::uint64_t cap = 2'000'000;
  int jobs = 1;
};

// Gains within this relative distance count as tied; the smaller index wins.
inline constexpr double kGainTieTolerance = 1e-12;

// Plain greedy: k rounds of argmax_e f(S + e) - f(S) over the remaining
// candidates. Rank ties fall back to lambda_n(W_{S+e}) before the index.
// Marginal gains of one round are evaluated on up to `jobs` threads.
SelectionReport greedy(const GramianBundle& bundle, MetricKind kind, int k, int jobs = 1);

// Exhaustive maximization over all size-k subsets, lexicographic order;
// exact ties keep the lexicographically smallest subset. Throws CapExceeded
// when C(M, k) > options.cap. The returned report carries the optimum in
// `optimum` and the optimal set's values in `picks` / `values`
// (values = {f(empty), f*}).
SelectionReport brute_force(const GramianBundle& bundle, MetricKind kind, int k,
                            const BruteForceOptions& options = {});

std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

// (f_greedy - f(empty)) / (f* - f(empty)); 1 when the optimal gain is below
// the degeneracy tolerance 1e-12 * (1 + |f(V) - f(empty)|).
double normalized_ratio(double f_greedy, double f_opt, double f_empty, double f_full);

// Runs brute force next to `greedy_report` and fills its optimum and ratio.
void attach_optimum(SelectionReport& greedy_report, const GramianBundle& bundle,
                    const BruteForceOptions& options = {});

struct EnsembleStats {
  std::vector<double> ratios;
  std::vector<std::uint8_t> exact;  // greedy value == optimum value
  double mean = 0.0;
  double min = 0.0;
  double exact_fraction = 0.0;
};

EnsembleStats summarize_ratios(std::vector<double> ratios, std::vector<std::uint8_t> exact);

// Greedy against brute force over `seeds` instances; instance i is
// make_instance(i). Instances run `jobs` at a time, and the statistics are
// reduced in seed order.
EnsembleStats greedy_vs_optimal(const std::function<LinearSystem(std::uint64_t)>& make_instance,
                                MetricKind kind, int k, std::uint64_t seeds, int jobs = 1);

}  // namespace gramsel
