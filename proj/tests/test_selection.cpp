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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gramsel/errors.hpp"
#include "gramsel/rng.hpp"
#include "gramsel/selection.hpp"
#include "oracles.hpp"

using namespace gramsel;

namespace {

LinearSystem diagonal_system(double epsilon) {
  const double d[] = {-1, -2, -3, -4};
  LinearSystem sys;
  sys.a = Matrix::diagonal(d);
  sys.candidates = LinearSystem::standard_basis(4);
  sys.epsilon = epsilon;
  return sys;
}

LinearSystem random_system(std::size_t n, double epsilon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LinearSystem sys;
  sys.a = oracle::random_stable(n, rng, 0.3);
  sys.candidates = LinearSystem::standard_basis(n);
  sys.epsilon = epsilon;
  return sys;
}

double f_of(const GramianBundle& b, MetricKind k, const std::vector<int>& s) {
  return evaluate(k, b, ActuatorSet(s));
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(16, 4) == 1820);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);  // saturates
}

TEST_CASE("hand enumeration on a diagonal system") {
  // Trace: single-actuator Gramians contribute 1/(2|d_i|); the best pair is {0, 1}.
  const GramianBundle tr = build_bundle(diagonal_system(0.0));
  const SelectionReport bt = brute_force(tr, MetricKind::kTrace, 2);
  CHECK(bt.optimum->set == ActuatorSet{0, 1});
  CHECK(bt.optimum->value == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(bt.evaluations == 6 + 1);  // six pairs plus f(empty)

  // Trace inverse with epsilon = 1: each pick of node i halves its inverse
  // entry 2|d_i|, gaining |d_i|. Best pair {2, 3}: f = -13, f(empty) = -20.
  const GramianBundle ti = build_bundle(diagonal_system(1.0));
  const SelectionReport bi = brute_force(ti, MetricKind::kNegTraceInv, 2);
  CHECK(bi.optimum->set == ActuatorSet{2, 3});
  CHECK(bi.optimum->value == doctest::Approx(-13).epsilon(1e-13));
  CHECK(bi.values.front() == doctest::Approx(-20).epsilon(1e-13));
  const SelectionReport gi = greedy(ti, MetricKind::kNegTraceInv, 2);
  CHECK(gi.picks == std::vector<int>{3, 2});
}

TEST_CASE("greedy report shape") {
  const GramianBundle b = build_bundle(random_system(6, 1e-3, 51));
  for (MetricKind k : {MetricKind::kTrace, MetricKind::kLogDet, MetricKind::kLambdaMin,
                       MetricKind::kNegTraceInv, MetricKind::kRank}) {
    const SelectionReport r = greedy(b, k, 6);
    CHECK(r.picks.size() == 6);
    CHECK(r.values.size() == 7);
    CHECK(r.selected() == ActuatorSet{0, 1, 2, 3, 4, 5});
    CHECK(r.final_value() == doctest::Approx(f_of(b, k, {0, 1, 2, 3, 4, 5})));
    for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] >= r.values[i - 1] - 1e-10);
  }
  CHECK_THROWS_AS(greedy(b, MetricKind::kTrace, 0), InvalidArgument);
  CHECK_THROWS_AS(greedy(b, MetricKind::kTrace, 7), InvalidArgument);
}

TEST_CASE("greedy first pick equals the best singleton") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GramianBundle b = build_bundle(random_system(6, 1e-3, 100 + seed));
    for (MetricKind k : {MetricKind::kLambdaMin, MetricKind::kNegTraceInv, MetricKind::kLogDet}) {
      const SelectionReport g = greedy(b, k, 1);
      const SelectionReport o = brute_force(b, k, 1);
      CHECK(g.picks == o.picks);
    }
  }
}

TEST_CASE("trace greedy is optimal and picks the largest single traces") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GramianBundle b = build_bundle(random_system(7, 0.0, 200 + seed));
    SelectionReport g = greedy(b, MetricKind::kTrace, 3);
    attach_optimum(g, b);
    CHECK(*g.ratio == 1.0);
    std::vector<int> order(7);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return b.w_each[x].trace() > b.w_each[y].trace();
    });
    CHECK(g.picks == std::vector<int>(order.begin(), order.begin() + 3));
  }
}

TEST_CASE("brute force agrees with a recursive oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GramianBundle b = build_bundle(random_system(7, 1e-3, 300 + seed));
    for (MetricKind k : {MetricKind::kLambdaMin, MetricKind::kNegTraceInv}) {
      const auto [set, value] =
          oracle::best_subset(7, 3, [&](const std::vector<int>& s) { return f_of(b, k, s); });
      const SelectionReport r = brute_force(b, k, 3, {2'000'000, 3});
      CHECK(r.optimum->set == ActuatorSet(set));
      CHECK(r.optimum->value == value);
    }
  }
}

TEST_CASE("ties go to the lowest index") {
  // All candidates identical: every gain ties.
  LinearSystem sys;
  sys.a = Matrix(2, 2, {-1, 0, 0, -1});
  sys.candidates = {Vector{1, 1}, Vector{1, 1}, Vector{1, 1}};
  const GramianBundle b = build_bundle(sys);
  CHECK(greedy(b, MetricKind::kTrace, 2).picks == std::vector<int>{0, 1});
  CHECK(brute_force(b, MetricKind::kTrace, 2).optimum->set == ActuatorSet{0, 1});
  // All gains zero.
  CHECK(greedy(b, MetricKind::kLambdaMin, 2).picks == std::vector<int>{0, 1});
}

TEST_CASE("rank ties fall back to the smallest eigenvalue") {
  // Both candidates raise the rank by one; the second gives the larger lambda_n.
  LinearSystem sys;
  sys.a = Matrix(2, 2, {-1, 0, 0, -1});
  sys.candidates = {Vector{0.1, 0}, Vector{0, 1}};
  sys.base = Matrix(2, 1, {1, 0});
  const GramianBundle b = build_bundle(sys);
  CHECK(greedy(b, MetricKind::kRank, 1).picks == std::vector<int>{1});
}

TEST_CASE("brute force cap") {
  const GramianBundle b = build_bundle(random_system(10, 0.0, 7));
  CHECK_THROWS_AS(brute_force(b, MetricKind::kTrace, 5, {100, 1}), CapExceeded);
  CHECK_NOTHROW(brute_force(b, MetricKind::kTrace, 5, {252, 1}));
}

TEST_CASE("normalized ratio") {
  CHECK(normalized_ratio(2, 3, 1, 5) == doctest::Approx(0.5));
  CHECK(normalized_ratio(1, 1, 1, 1) == 1.0);
  CHECK(normalized_ratio(1, 1 + 1e-14, 1, 2) == 1.0);  // degenerate optimum gain
  CHECK_THROWS_AS(normalized_ratio(0, 0, -INFINITY, 0), InvalidArgument);
}

TEST_CASE("normalized ratio stays at most one") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GramianBundle b = build_bundle(random_system(8, 1e-6, 400 + seed));
    for (MetricKind k : {MetricKind::kLambdaMin, MetricKind::kNegTraceInv}) {
      SelectionReport g = greedy(b, k, 3);
      attach_optimum(g, b);
      CHECK(*g.ratio <= 1 + 1e-12);
      CHECK(*g.ratio >= 0);
    }
  }
}

TEST_CASE("picks do not depend on the worker count") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GramianBundle b = build_bundle(random_system(9, 1e-6, 500 + seed));
    const SelectionReport r1 = greedy(b, MetricKind::kNegTraceInv, 4, 1);
    const SelectionReport r3 = greedy(b, MetricKind::kNegTraceInv, 4, 3);
    CHECK(r1.picks == r3.picks);
    CHECK(r1.values == r3.values);
    const SelectionReport o1 = brute_force(b, MetricKind::kLambdaMin, 4, {2'000'000, 1});
    const SelectionReport o3 = brute_force(b, MetricKind::kLambdaMin, 4, {2'000'000, 3});
    CHECK(o1.optimum->set == o3.optimum->set);
  }
}

TEST_CASE("ensemble statistics are reproducible from stored seeds") {
  auto make = [](std::uint64_t i) { return random_system(8, 1e-6, derive_seed(99, i)); };
  const EnsembleStats a = greedy_vs_optimal(make, MetricKind::kNegTraceInv, 3, 20, 1);
  const EnsembleStats b = greedy_vs_optimal(make, MetricKind::kNegTraceInv, 3, 20, 4);
  CHECK(a.ratios == b.ratios);
  CHECK(a.ratios.size() == 20);
  for (double r : a.ratios) {
    CHECK(r >= 0);
    CHECK(r <= 1 + 1e-12);
  }
  // Instance 7 recomputed on its own.
  const GramianBundle b7 = build_bundle(make(7));
  SelectionReport g = greedy(b7, MetricKind::kNegTraceInv, 3);
  attach_optimum(g, b7);
  CHECK(*g.ratio == a.ratios[7]);

  const EnsembleStats trace = greedy_vs_optimal(make, MetricKind::kTrace, 3, 10, 2);
  CHECK(trace.min == 1.0);
  CHECK(trace.exact_fraction == 1.0);
}

TEST_CASE("small lambda-min study on random stable instances") {
  // n = 6, k = 2 over 100 seeds; the mean normalized ratio is recorded.
  auto make = [](std::uint64_t i) { return random_system(6, 0.0, derive_seed(7, i)); };
  const EnsembleStats s = greedy_vs_optimal(make, MetricKind::kLambdaMin, 2, 100, 2);
  MESSAGE("mean ratio " << s.mean << ", min " << s.min << ", exact " << s.exact_fraction);
  CHECK(s.min >= 0);
  CHECK(s.mean <= 1 + 1e-12);
}

TEST_CASE("evaluation failures carry the subset") {
  LinearSystem sys;
  sys.a = Matrix(2, 2, {-1, 0, 0, -1});
  sys.candidates = LinearSystem::standard_basis(2);
  const GramianBundle b = build_bundle(sys);
  try {
    greedy(b, MetricKind::kNegTraceInv, 1);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(e.subset().size() <= 1);
  }
}
