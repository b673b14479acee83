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

#include "gramsel/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"

namespace gramsel {
namespace {

constexpr double kVacuousGamma = 1e-15;

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

GuaranteeBound finish(double gamma_lb, BoundSource source) {
  GuaranteeBound b;
  b.gamma_lb = std::clamp(gamma_lb, 0.0, 1.0);
  b.alpha_ub = 1.0 - b.gamma_lb;
  b.vacuous = b.gamma_lb <= kVacuousGamma;
  b.factor = guarantee_factor(b.alpha_ub, b.gamma_lb);
  b.source = source;
  return b;
}

void require_candidates(const GramianBundle& bundle) {
  if (bundle.num_candidates() == 0) {
    throw InvalidArgument("guarantee bounds need at least one candidate actuator");
  }
}

}  // namespace

double guarantee_factor_direct(double alpha, double gamma) {
  if (alpha == 0.0) return gamma;
  return -std::expm1(-alpha * gamma) / alpha;
}

double guarantee_factor_series(double alpha, double gamma) {
  // gamma - alpha gamma^2 / 2 + alpha^2 gamma^3 / 6
  const double ag = alpha * gamma;
  return gamma * (1.0 - ag / 2.0 + ag * ag / 6.0);
}

double guarantee_factor(double alpha, double gamma) {
  check_unit(alpha, "curvature");
  check_unit(gamma, "submodularity ratio");
  if (alpha < kSeriesCurvatureCutoff) return guarantee_factor_series(alpha, gamma);
  return guarantee_factor_direct(alpha, gamma);
}

GuaranteeBound lambda_min_bounds(const GramianBundle& bundle) {
  require_candidates(bundle);
  if (bundle.has_base) {
    throw InvalidArgument(
        "the lambda_min bound applies to the raw Gramian; with base inputs or "
        "regularization the single-actuator minimum eigenvalue is still zero for "
        "rank-one inputs and the bound is vacuous, so rebuild without base and epsilon");
  }
  double min_low = std::numeric_limits<double>::infinity();
  double max_high = 0.0;
  for (const SymMatrix& w : bundle.w_each) {
    const Spectrum s = sym_eigenvalues(w);
    const double low = numerical_rank(s) < s.size() ? 0.0 : s.min();
    min_low = std::min(min_low, low);
    max_high = std::max(max_high, s.max());
  }
  if (!(max_high > 0.0)) return finish(0.0, BoundSource::kLambdaMin);
  return finish(min_low / max_high, BoundSource::kLambdaMin);
}

GuaranteeBound trace_inverse_bounds(const GramianBundle& bundle) {
  require_candidates(bundle);
  if (!bundle.has_base || !cholesky(bundle.w_base)) {
    throw SingularMatrix(
        "the trace-inverse bound assumes base actuators that make the system "
        "controllable (positive definite base Gramian)",
        bundle.has_base ? sym_eigenvalues(bundle.w_base).min() : 0.0);
  }
  double min_tr = std::numeric_limits<double>::infinity();
  double max_tr = 0.0;
  double min_low = std::numeric_limits<double>::infinity();
  SymMatrix w_all = bundle.w_base;
  for (const SymMatrix& w : bundle.w_each) {
    min_tr = std::min(min_tr, w.trace());
    max_tr = std::max(max_tr, w.trace());
    min_low = std::min(min_low, sym_eigenvalues(bundle.w_base + w).min());
    w_all += w;
  }
  const double high = sym_eigenvalues(w_all).max();
  if (!(max_tr > 0.0)) return finish(0.0, BoundSource::kTraceInverse);
  const double gamma = (min_tr * min_low * min_low) / (max_tr * high * high);
  return finish(gamma, BoundSource::kTraceInverse);
}

GuaranteeBound bounds_for(MetricKind kind, const GramianBundle& bundle) {
  switch (kind) {
    case MetricKind::kLambdaMin: return lambda_min_bounds(bundle);
    case MetricKind::kNegTraceInv: return trace_inverse_bounds(bundle);
    default:
      throw InvalidArgument("closed-form bounds exist only for lmin and ntrinv, not '" +
                            std::string(metric_name(kind)) + "'");
  }
}

std::optional<Certificate> certified_lower_value(const SelectionReport& report,
                                                 const GuaranteeBound& bound,
                                                 std::optional<double> f_opt) {
  if (bound.vacuous) return std::nullopt;
  if (!is_monotone(report.metric)) {
    throw InvalidArgument("certificates need a nondecreasing metric");
  }
  Certificate c;
  c.factor = guarantee_factor(bound.alpha_ub, bound.gamma_lb);
  c.f_empty = report.values.front();
  c.f_greedy = report.final_value();
  if (report.optimum) f_opt = report.optimum->value;
  if (f_opt) c.floor = c.f_empty + c.factor * (*f_opt - c.f_empty);
  return c;
}

std::string_view bound_source_name(BoundSource s) {
  return s == BoundSource::kLambdaMin ? "lambda_min" : "trace_inverse";
}

}  // namespace gramsel
