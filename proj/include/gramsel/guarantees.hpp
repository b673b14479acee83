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

#include <optional>
#include <string>

#include "gramsel/selection.hpp"

namespace gramsel {

// Below this curvature the guarantee factor is evaluated by its series.
inline constexpr double kSeriesCurvatureCutoff = 1e-8;

// Greedy approximation factor for a nondecreasing set function with
// submodularity ratio gamma and curvature alpha: (1/alpha)(1 - e^{-alpha gamma}).
// Equals 1 - 1/e at (1, 1) and tends to gamma as alpha -> 0.
// Throws InvalidArgument outside [0, 1]^2.
double guarantee_factor(double alpha, double gamma);
// The two branches, exposed for testing.
double guarantee_factor_direct(double alpha, double gamma);
double guarantee_factor_series(double alpha, double gamma);

enum class BoundSource { kLambdaMin, kTraceInverse };

struct GuaranteeBound {
  double gamma_lb = 0.0;
  double alpha_ub = 1.0;
  double factor = 0.0;  // guarantee_factor(alpha_ub, gamma_lb)
  bool vacuous = true;
  BoundSource source = BoundSource::kLambdaMin;
};

// Closed-form bounds for f(S) = lambda_n(W_S) on a bundle without base
// inputs or regularization:
//   gamma >= min_w lambda_n(W_w) / max_w lambda_1(W_w),  alpha <= 1 - that.
// A numerically singular single-candidate Gramian (rank below n at the
// default tolerance) counts as lambda_n = 0 and makes the bound vacuous.
GuaranteeBound lambda_min_bounds(const GramianBundle& bundle);

// Closed-form bounds for f(S) = -tr(Wbar_S^{-1}) with a positive definite
// base Gramian:
//   gamma >= min tr(W_w) (min lambda_n(Wbar_w))^2 / (max tr(W_w) lambda_1(Wbar_V)^2)
// with Wbar = w_base + W and alpha <= 1 - gamma_lb.
GuaranteeBound trace_inverse_bounds(const GramianBundle& bundle);

// Dispatches to the bound matching the metric (lmin or ntrinv).
GuaranteeBound bounds_for(MetricKind kind, const GramianBundle& bundle);

struct Certificate {
  double factor = 0.0;
  // f(empty) + factor * (f* - f(empty)), when f* is known.
  std::optional<double> floor;
  // (f_greedy - f(empty)) / (f* - f(empty)) is guaranteed to be >= factor.
  double f_empty = 0.0;
  double f_greedy = 0.0;
};

// Certified lower value for the greedy result. Returns nullopt ("no
// certificate") when the bound is vacuous. f* is taken from the report's
// optimum when present, otherwise from `f_opt` if given.
std::optional<Certificate> certified_lower_value(const SelectionReport& report,
                                                 const GuaranteeBound& bound,
                                                 std::optional<double> f_opt = std::nullopt);

std::string_view bound_source_name(BoundSource s);

}  // namespace gramsel
