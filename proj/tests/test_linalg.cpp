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

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"
#include "oracles.hpp"

using namespace gramsel;

TEST_CASE("matrix construction and arithmetic") {
  const Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 2) == 6);
  CHECK(a.transpose()(2, 1) == 6);
  CHECK_THROWS_AS(Matrix(2, 2, {1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), InvalidArgument);

  const Matrix b(3, 2, {1, 0, 0, 1, 1, 1});
  const Matrix c = a * b;
  CHECK(c == Matrix(2, 2, {4, 5, 10, 11}));
  CHECK(c == oracle::matmul(a, b));
  CHECK(Matrix::identity(3).trace() == 3);
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(91.0)));
  CHECK((a + a) == 2.0 * a);
  CHECK((a - a).max_abs() == 0);
}

TEST_CASE("symmetric matrices are exactly symmetric") {
  const SymMatrix s(Matrix(2, 2, {1, 2, 4, 3}));
  CHECK(s(0, 1) == 3);
  CHECK(s(1, 0) == 3);
  const double v[] = {1, -2};
  const SymMatrix o = SymMatrix::outer(v);
  CHECK(o(0, 1) == -2);
  CHECK(o(1, 1) == 4);
  CHECK((s + o)(0, 1) == 1);
}

TEST_CASE("matrix json round trip") {
  const Matrix a(2, 3, {1, 2, 3, 4, 5, 6.5});
  nlohmann::json j = a;
  CHECK(j["m"] == 3);
  CHECK(j.get<Matrix>() == a);
  nlohmann::json sq = Matrix::identity(2);
  CHECK(!sq.contains("m"));
  CHECK(sq.get<Matrix>() == Matrix::identity(2));
}

TEST_CASE("eigenvalues of small known matrices") {
  SUBCASE("diagonal") {
    const double d[] = {3, -1, 2};
    const auto s = sym_eigenvalues(SymMatrix::diagonal(d));
    CHECK(s.values == std::vector<double>{3, 2, -1});
  }
  SUBCASE("2x2") {
    const auto s = sym_eigenvalues(SymMatrix(Matrix(2, 2, {2, 1, 1, 2})));
    CHECK(s.max() == doctest::Approx(3).epsilon(1e-14));
    CHECK(s.min() == doctest::Approx(1).epsilon(1e-14));
  }
  SUBCASE("1x1 and empty") {
    CHECK(sym_eigenvalues(SymMatrix(Matrix(1, 1, {-4}))).values == std::vector<double>{-4});
    CHECK_THROWS_AS(sym_eigenvalues(SymMatrix(0)), InvalidArgument);
  }
}

TEST_CASE("eigen decomposition properties on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const SymMatrix m = oracle::random_symmetric(n, rng);
    const SymEigen e = sym_eigen(m, true);
    const auto& ev = e.spectrum.values;
    const double scale = 1 + m.matrix().max_abs() * n;

    CHECK(std::is_sorted(ev.rbegin(), ev.rend()));
    CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == doctest::Approx(m.trace()).scale(scale));

    const auto jac = oracle::jacobi_eigenvalues(m);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ev[i] - jac[i]) <= 1e-12 * scale);

    // V diag V^T reconstructs m; V is orthonormal.
    const Matrix& v = *e.vectors;
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = ev[i];
    const Matrix rec = oracle::matmul(oracle::matmul(v, d), oracle::transpose(v));
    CHECK(oracle::max_abs_diff(rec, m.matrix()) <= 1e-12 * scale);
    const Matrix vtv = oracle::matmul(oracle::transpose(v), v);
    CHECK(oracle::max_abs_diff(vtv, Matrix::identity(n)) <= 1e-12 * n);

    // Permutation similarity leaves the spectrum unchanged.
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, (n - 1 - i + 3) % n) = 1;
    const SymMatrix pm(oracle::matmul(oracle::matmul(p, m.matrix()), oracle::transpose(p)));
    const auto pev = sym_eigenvalues(pm).values;
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(pev[i] - ev[i]) <= 1e-12 * scale);
  }
}

TEST_CASE("Weyl inequalities for sums") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const SymMatrix a = oracle::random_symmetric(n, rng), b = oracle::random_symmetric(n, rng);
    const auto ea = sym_eigenvalues(a).values, eb = sym_eigenvalues(b).values;
    const auto es = sym_eigenvalues(a + b).values;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(es[i] <= ea[i] + eb.front() + 1e-10);
      CHECK(es[i] >= ea[i] + eb.back() - 1e-10);
    }
  }
}

TEST_CASE("Cholesky, trace inverse and log det against independent routes") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const Matrix g = oracle::random_matrix(n, n, rng);
    SymMatrix m(oracle::matmul(g, oracle::transpose(g)));
    m += SymMatrix::identity(n);
    const auto l = cholesky(m);
    REQUIRE(l);
    CHECK(oracle::max_abs_diff(oracle::matmul(*l, oracle::transpose(*l)), m.matrix()) <=
          1e-12 * m.matrix().max_abs());

    const auto jac = oracle::jacobi_eigenvalues(m);
    double tr_inv = 0, ld = 0;
    for (double v : jac) {
      tr_inv += 1 / v;
      ld += std::log(v);
    }
    CHECK(trace_inverse(m) == doctest::Approx(tr_inv).epsilon(1e-11));
    CHECK(trace_inverse(m) == doctest::Approx(oracle::inverse(m.matrix()).trace()).epsilon(1e-11));
    CHECK(log_det(m) == doctest::Approx(ld).epsilon(1e-11).scale(1));

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = double(i) - 1.5;
    const Matrix inv = oracle::inverse(m.matrix());
    double q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += x[i] * inv(i, j) * x[j];
    CHECK(inverse_quadratic_form(m, x) == doctest::Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("non positive definite inputs") {
  const double d[] = {1, 0, 2};
  const SymMatrix m = SymMatrix::diagonal(d);
  CHECK_FALSE(cholesky(m));
  CHECK_THROWS_AS(trace_inverse(m), SingularMatrix);
  CHECK_THROWS_AS(log_det(m), SingularMatrix);
  const double neg[] = {1, -1};
  try {
    trace_inverse(SymMatrix::diagonal(neg));
    FAIL("expected SingularMatrix");
  } catch (const SingularMatrix& e) {
    CHECK(e.lambda_min() == doctest::Approx(-1));
  }
}

TEST_CASE("numerical rank") {
  const double d[] = {1, 1e-3, 1e-12, 0};
  CHECK(numerical_rank(SymMatrix::diagonal(d)) == 2);
  CHECK(numerical_rank(SymMatrix::diagonal(d), 1e-13) == 3);
  CHECK(numerical_rank(SymMatrix(3)) == 0);
  const double v[] = {1, 2, 3};
  CHECK(numerical_rank(SymMatrix::outer(v)) == 1);
  CHECK_THROWS(numerical_rank(SymMatrix::outer(v), 0.0));
}

TEST_CASE("psd clamp") {
  CHECK(psd_clamp(-1e-12, 1.0) == 0.0);
  CHECK(psd_clamp(-1e-9, 1.0) == -1e-9);
  CHECK(psd_clamp(0.25, 1.0) == 0.25);
}

TEST_CASE("spectral abscissa matches characteristic polynomial roots") {
  CHECK(spectral_abscissa(Matrix(2, 2, {-1, 5, 0, -2})) == doctest::Approx(-1));
  // Rotation-like block: eigenvalues -0.5 +- 2i.
  CHECK(spectral_abscissa(Matrix(2, 2, {-0.5, 2, -2, -0.5})) == doctest::Approx(-0.5));
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const Matrix a = oracle::random_matrix(n, n, rng);
    CHECK(spectral_abscissa(a) ==
          doctest::Approx(oracle::abscissa_from_char_poly(a)).epsilon(1e-7).scale(1));
  }
}
