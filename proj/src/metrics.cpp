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

#include "gramsel/metrics.hpp"

#include <limits>
#include <string>

#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"

namespace gramsel {

ModularityClass modularity_class(MetricKind kind) {
  switch (kind) {
    case MetricKind::kTrace: return ModularityClass::kModular;
    case MetricKind::kLogDet:
    case MetricKind::kRank: return ModularityClass::kSubmodular;
    case MetricKind::kLambdaMin:
    case MetricKind::kNegTraceInv: return ModularityClass::kNonSubmodular;
  }
  throw InvalidArgument("unknown metric");
}

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kTrace: return "trace";
    case MetricKind::kLogDet: return "logdet";
    case MetricKind::kRank: return "rank";
    case MetricKind::kLambdaMin: return "lmin";
    case MetricKind::kNegTraceInv: return "ntrinv";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view name) {
  for (MetricKind k : {MetricKind::kTrace, MetricKind::kLogDet, MetricKind::kRank,
                       MetricKind::kLambdaMin, MetricKind::kNegTraceInv}) {
    if (metric_name(k) == name) return k;
  }
  throw InvalidArgument("unknown metric '" + std::string(name) +
                        "' (expected trace|logdet|rank|lmin|ntrinv)");
}

double evaluate_gramian(MetricKind kind, const SymMatrix& w) {
  switch (kind) {
    case MetricKind::kTrace:
      return w.trace();
    case MetricKind::kLogDet: {
      if (!cholesky(w)) return -std::numeric_limits<double>::infinity();
      return log_det(w);
    }
    case MetricKind::kRank:
      return static_cast<double>(numerical_rank(w));
    case MetricKind::kLambdaMin: {
      const Spectrum s = sym_eigenvalues(w);
      return psd_clamp(s.min(), s.max());
    }
    case MetricKind::kNegTraceInv:
      return -trace_inverse(w);
  }
  throw InvalidArgument("unknown metric");
}

double evaluate(MetricKind kind, const GramianBundle& bundle, const ActuatorSet& s) {
  return evaluate_gramian(kind, assemble(bundle, s));
}

double normalized_evaluate(MetricKind kind, const GramianBundle& bundle,
                           const ActuatorSet& s) {
  if (s.empty()) return 0.0;
  return evaluate(kind, bundle, s) - evaluate(kind, bundle, ActuatorSet{});
}

double default_epsilon(const LinearSystem& sys, MetricKind kind) {
  if (kind != MetricKind::kNegTraceInv) return 0.0;
  if (!sys.base) return 1e-6;
  LinearSystem base_only = sys;
  base_only.candidates.clear();
  base_only.epsilon = 0.0;
  const GramianBundle b = build_bundle(base_only);
  return cholesky(b.w_base) ? 0.0 : 1e-6;
}

}  // namespace gramsel
