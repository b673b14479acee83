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

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"
#include "gramsel/metrics.hpp"
#include "oracles.hpp"

using namespace gramsel;

namespace {

GramianBundle bundle_of(SymMatrix base, std::vector<SymMatrix> each) {
  GramianBundle b;
  b.has_base = base.matrix().max_abs() > 0;
  b.w_base = std::move(base);
  b.w_each = std::move(each);
  return b;
}

GramianBundle random_bundle(std::size_t n, double epsilon, std::mt19937_64& rng) {
  LinearSystem sys;
  sys.a = oracle::random_stable(n, rng, 0.3);
  sys.candidates = LinearSystem::standard_basis(n);
  sys.epsilon = epsilon;
  return build_bundle(sys);
}

ActuatorSet random_set(int m, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.4);
  std::vector<int> idx;
  for (int i = 0; i < m; ++i)
    if (coin(rng)) idx.push_back(i);
  return ActuatorSet(idx);
}

constexpr MetricKind kAll[] = {MetricKind::kTrace, MetricKind::kLogDet, MetricKind::kRank,
                               MetricKind::kLambdaMin, MetricKind::kNegTraceInv};

}  // namespace

TEST_CASE("metric names and classes") {
  for (MetricKind k : kAll) CHECK(parse_metric(metric_name(k)) == k);
  CHECK_THROWS_AS(parse_metric("energy"), InvalidArgument);
  CHECK(modularity_class(MetricKind::kTrace) == ModularityClass::kModular);
  CHECK(modularity_class(MetricKind::kLogDet) == ModularityClass::kSubmodular);
  CHECK(modularity_class(MetricKind::kRank) == ModularityClass::kSubmodular);
  CHECK(modularity_class(MetricKind::kLambdaMin) == ModularityClass::kNonSubmodular);
  CHECK(modularity_class(MetricKind::kNegTraceInv) == ModularityClass::kNonSubmodular);
}

TEST_CASE("hand-computed metric values") {
  LinearSystem sys;
  sys.a = Matrix(2, 2, {-1, 0, 0, -1});
  sys.candidates = LinearSystem::standard_basis(2);
  const GramianBundle b = build_bundle(sys);
  CHECK(evaluate(MetricKind::kTrace, b, {0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(evaluate(MetricKind::kLambdaMin, b, {}) == 0.0);
  CHECK(evaluate(MetricKind::kLambdaMin, b, {0}) == 0.0);
  CHECK(evaluate(MetricKind::kLambdaMin, b, {0, 1}) == doctest::Approx(0.5));
  CHECK(evaluate(MetricKind::kRank, b, {0}) == 1.0);
  CHECK(evaluate(MetricKind::kRank, b, {0, 1}) == 2.0);
  CHECK(evaluate(MetricKind::kLogDet, b, {0}) == -std::numeric_limits<double>::infinity());
  CHECK(evaluate(MetricKind::kLogDet, b, {0, 1}) == doctest::Approx(2 * std::log(0.5)));
  CHECK_THROWS_AS(evaluate(MetricKind::kNegTraceInv, b, {0}), SingularMatrix);

  const GramianBundle id = bundle_of(SymMatrix::identity(2), {SymMatrix::identity(2)});
  CHECK(evaluate(MetricKind::kNegTraceInv, id, {}) == doctest::Approx(-2.0));
  CHECK(normalized_evaluate(MetricKind::kNegTraceInv, id, {0}) == doctest::Approx(1.0));
  for (MetricKind k : {MetricKind::kTrace, MetricKind::kLambdaMin, MetricKind::kNegTraceInv}) {
    CHECK(normalized_evaluate(k, id, {}) == 0.0);
  }
}

TEST_CASE("single-input rank equals the Kalman rank") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4;
    LinearSystem sys;
    sys.a = oracle::random_stable(n, rng, 0.5);
    Vector b(n, 0.0);
    b[trial % n] = 1.0;
    if (trial % 3 == 0) {  // decoupled mode: uncontrollable through b
      for (std::size_t j = 0; j < n; ++j) {
        if (j == n - 1) continue;
        sys.a(n - 1, j) = 0;
        sys.a(j, n - 1) = 0;
      }
      b.assign(n, 0.0);
      b[0] = 1.0;
    }
    sys.candidates = {b};
    const GramianBundle bundle = build_bundle(sys);

    Eigen::MatrixXd a(n, n), ctrb(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = sys.a(i, j);
    Eigen::VectorXd col = Eigen::Map<const Eigen::VectorXd>(b.data(), n);
    for (std::size_t k = 0; k < n; ++k) {
      ctrb.col(k) = col;
      col = a * col;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(ctrb);
    lu.setThreshold(1e-10);
    CHECK(evaluate(MetricKind::kRank, bundle, {0}) == static_cast<double>(lu.rank()));
  }
}

TEST_CASE("trace is modular") {
  std::mt19937_64 rng(42);
  const GramianBundle b = random_bundle(7, 1e-3, rng);
  const double empty = evaluate(MetricKind::kTrace, b, {});
  for (int trial = 0; trial < 50; ++trial) {
    const ActuatorSet s = random_set(7, rng);
    double sum = empty;
    for (int i : s.indices()) sum += evaluate(MetricKind::kTrace, b, {i}) - empty;
    CHECK(evaluate(MetricKind::kTrace, b, s) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("monotone marginal gains") {
  std::mt19937_64 rng(43);
  const GramianBundle raw = random_bundle(6, 0.0, rng);
  const GramianBundle reg = random_bundle(6, 1e-4, rng);
  for (int trial = 0; trial < 200; ++trial) {
    const ActuatorSet s = random_set(6, rng);
    const int w = static_cast<int>(rng() % 6);
    if (s.contains(w)) continue;
    CHECK(evaluate(MetricKind::kLambdaMin, raw, s.with(w)) >=
          evaluate(MetricKind::kLambdaMin, raw, s) - 1e-10);
    CHECK(evaluate(MetricKind::kNegTraceInv, reg, s.with(w)) >=
          evaluate(MetricKind::kNegTraceInv, reg, s) - 1e-10);
    CHECK(evaluate(MetricKind::kTrace, raw, s.with(w)) >= evaluate(MetricKind::kTrace, raw, s));
  }
}

TEST_CASE("log det diminishing returns") {
  std::mt19937_64 rng(44);
  const GramianBundle b = random_bundle(6, 1e-3, rng);
  for (int trial = 0; trial < 200; ++trial) {
    const ActuatorSet small = random_set(6, rng);
    const ActuatorSet big = small.united(random_set(6, rng));
    const int w = static_cast<int>(rng() % 6);
    if (big.contains(w)) continue;
    const double gs = evaluate(MetricKind::kLogDet, b, small.with(w)) -
                      evaluate(MetricKind::kLogDet, b, small);
    const double gb = evaluate(MetricKind::kLogDet, b, big.with(w)) -
                      evaluate(MetricKind::kLogDet, b, big);
    CHECK(gs >= gb - 1e-9);
  }
}

TEST_CASE("normalized lambda-min equals raw lambda-min without a base") {
  std::mt19937_64 rng(45);
  const GramianBundle b = random_bundle(5, 0.0, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const ActuatorSet s = random_set(5, rng);
    CHECK(normalized_evaluate(MetricKind::kLambdaMin, b, s) ==
          evaluate(MetricKind::kLambdaMin, b, s));
  }
}

TEST_CASE("minimum energy quadratic form matches the eigen route") {
  std::mt19937_64 rng(46);
  const GramianBundle b = random_bundle(6, 1e-2, rng);
  const SymMatrix w = assemble(b, {0, 2, 3});
  const SymEigen e = sym_eigen(w, true);
  const Matrix& v = *e.vectors;
  std::vector<double> x{1, -1, 0.5, 2, 0, -0.25};
  double via_eigen = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    double proj = 0;
    for (std::size_t r = 0; r < 6; ++r) proj += v(r, i) * x[r];
    via_eigen += proj * proj / e.spectrum.values[i];
  }
  CHECK(inverse_quadratic_form(w, x) == doctest::Approx(via_eigen).epsilon(1e-9));
}

TEST_CASE("default epsilon") {
  LinearSystem sys;
  sys.a = Matrix(2, 2, {-1, 0, 0, -1});
  sys.candidates = LinearSystem::standard_basis(2);
  CHECK(default_epsilon(sys, MetricKind::kNegTraceInv) == 1e-6);
  CHECK(default_epsilon(sys, MetricKind::kLambdaMin) == 0.0);
  sys.base = Matrix::identity(2);
  CHECK(default_epsilon(sys, MetricKind::kNegTraceInv) == 0.0);
  sys.base = Matrix(2, 1, {1, 0});
  CHECK(default_epsilon(sys, MetricKind::kNegTraceInv) == 1e-6);
}
