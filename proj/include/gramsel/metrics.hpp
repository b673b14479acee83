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

#include <string_view>

#include "gramsel/system.hpp"

namespace gramsel {

// Set functions of the controllability Gramian W_S.
enum class MetricKind {
  kTrace,        // tr(W_S)
  kLogDet,       // log det(W_S); -inf on singular W_S
  kRank,         // numerical rank of W_S
  kLambdaMin,    // lambda_n(W_S)
  kNegTraceInv,  // -tr(W_S^{-1}); needs a positive definite base Gramian
};

enum class ModularityClass { kModular, kSubmodular, kNonSubmodular };

ModularityClass modularity_class(MetricKind kind);
// All five metrics are nondecreasing in S.
inline bool is_monotone(MetricKind) { return true; }

// CLI spelling: trace | logdet | rank | lmin | ntrinv
std::string_view metric_name(MetricKind kind);
MetricKind parse_metric(std::string_view name);

// f(W) for an already assembled Gramian.
double evaluate_gramian(MetricKind kind, const SymMatrix& w);

// f(S). NegTraceInv on a singular Gramian throws SingularMatrix (naming
// lambda_n); LogDet on a non-PD Gramian returns -infinity.
double evaluate(MetricKind kind, const GramianBundle& bundle, const ActuatorSet& s);

// f(S) - f(empty); exactly 0 for the empty set.
double normalized_evaluate(MetricKind kind, const GramianBundle& bundle,
                           const ActuatorSet& s);

// epsilon to use when the instance file does not set one: 1e-6 for the
// trace-inverse metric when the base inputs (if any) do not already make the
// base Gramian positive definite, 0 otherwise.
double default_epsilon(const LinearSystem& sys, MetricKind kind);

}  // namespace gramsel
