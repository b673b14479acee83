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

// Empirical submodularity ratio and curvature.
//
// With marginal gains rho_X(S) = f(S u X) - f(S):
//   gamma = largest g with  sum_{w in O \ S} rho_w(S) >= g * rho_O(S)   for all O, S
//   alpha = smallest a with rho_j(S\j u O) >= (1 - a) * rho_j(S\j)  for all O, S, j in S \ O
// Sampling a subset of the constraints can only relax the minimum that
// defines gamma (so gamma_emp >= gamma) and can only miss the maximum that
// defines alpha (so alpha_emp.max <= alpha). Constraints whose denominator is
// at or below tol = 1e-12 * (1 + |f(V) - f(empty)|) are vacuous and skipped.

#include <cstdint>
#include <optional>

#include "gramsel/metrics.hpp"

namespace gramsel {

// Subset-size law: |S| uniform on 0..M-1 then S uniform among subsets of
// that size; |O| uniform on 1..M then O uniform. For curvature, j is uniform
// in S \ O and the pair is redrawn while S \ O is empty.
struct SamplePlan {
  std::uint64_t pairs = 5000;
  std::uint64_t seed = 0;
  // Walk every (S, O) pair (and j) instead of sampling; needs M <= 6.
  bool all_pairs = false;
  int jobs = 1;
};

enum class EstimateMode { kSampled, kAllPairs, kExhaustive };

struct GammaWitness {
  ActuatorSet s;
  ActuatorSet omega;
  double ratio = 0.0;  // unclamped
};

struct AlphaWitness {
  ActuatorSet s;
  ActuatorSet omega;
  int j = -1;
  double alpha = 0.0;  // unclamped
};

struct GammaEstimate {
  double gamma = 1.0;           // clamped to [0, 1]
  std::uint64_t samples = 0;    // admissible constraints
  std::uint64_t skipped = 0;    // vacuous denominators
  std::uint64_t violations = 0; // constraints with ratio < 1 (not submodular there)
  std::optional<GammaWitness> witness;
};

struct AlphaEstimate {
  double max = 0.0;  // binding estimate; each sample clamped to [0, 1]
  double min = 0.0;
  double average = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t skipped = 0;
  std::optional<AlphaWitness> witness;
};

struct RatioEstimate {
  EstimateMode mode = EstimateMode::kSampled;
  GammaEstimate gamma;
  AlphaEstimate alpha;
};

// Throws Error when no admissible constraint was drawn.
GammaEstimate estimate_gamma(const GramianBundle& bundle, MetricKind kind,
                             const SamplePlan& plan);
AlphaEstimate estimate_alpha(const GramianBundle& bundle, MetricKind kind,
                             const SamplePlan& plan);
RatioEstimate estimate_ratios(const GramianBundle& bundle, MetricKind kind,
                              const SamplePlan& plan);

inline constexpr std::size_t kExhaustiveMaxCandidates = 6;

// Exact gamma and alpha over every constraint, from a table of f on all 2^M
// subsets. The table is scanned in two different orders and the results are
// required to agree. Throws CapExceeded when M > 6.
RatioEstimate exhaustive_gamma_alpha(const GramianBundle& bundle, MetricKind kind);

std::string_view estimate_mode_name(EstimateMode mode);

}  // namespace gramsel
