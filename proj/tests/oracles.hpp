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

// Independent reference computations used only by the tests. None of these
// share code with the library: eigenvalues come from cyclic Jacobi, Gramians
// from time-domain quadrature of the matrix exponential, abscissas from the
// roots of the characteristic polynomial, and subset optima from plain
// recursion over f.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "gramsel/matrix.hpp"

namespace oracle {

using gramsel::Matrix;
using gramsel::SymMatrix;

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += (long double)a(i, k) * b(k, j);
      c(i, j) = (double)s;
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

inline double frob(const Matrix& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Cyclic Jacobi rotations; eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(const SymMatrix& s) {
  const std::size_t n = s.n();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = s(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// Gauss-Jordan inverse with partial pivoting.
inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix a = m, inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a(c, k), a(p, k));
      std::swap(inv(c, k), inv(p, k));
    }
    const double d = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= d;
      inv(c, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

// Matrix exponential by scaling and squaring with a long Taylor series.
inline Matrix expm(const Matrix& a) {
  const std::size_t n = a.rows();
  double norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    for (std::size_t j = 0; j < n; ++j) r += std::abs(a(i, j));
    norm = std::max(norm, r);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  Matrix x = std::ldexp(1.0, -squarings) * a;
  Matrix result = Matrix::identity(n), term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * matmul(term, x);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = matmul(result, result);
  return result;
}

// W = int_0^T e^{At} Q e^{A^T t} dt by composite Simpson, with e^{At}
// propagated exactly by powers of e^{Ah}. Intended for well-damped A.
inline Matrix quadrature_gramian(const Matrix& a, const Matrix& q, double horizon, double h) {
  const std::size_t n = a.rows();
  std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / h));
  if (steps % 2) ++steps;
  const Matrix step = expm(h * a);
  Matrix e = Matrix::identity(n);
  Matrix acc(n, n);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * matmul(matmul(e, q), transpose(e));
    e = matmul(e, step);
  }
  return (h / 3.0) * acc;
}

// Characteristic polynomial coefficients c[0..n] of det(zI - A), c[0] = 1,
// by Faddeev-LeVerrier.
inline std::vector<double> char_poly(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[k - 1];
    m = am;
    const Matrix amk = matmul(a, m);
    c[k] = -amk.trace() / static_cast<double>(k);
  }
  return c;
}

// All roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  using cd = std::complex<double>;
  double bound = 0;
  for (std::size_t i = 1; i <= n; ++i) bound = std::max(bound, std::abs(c[i]));
  bound += 1;
  std::vector<cd> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(bound, 0.4 + 2 * M_PI * i / n);
  auto eval = [&](cd x) {
    cd v = 1;
    for (std::size_t i = 1; i <= n; ++i) v = v * x + c[i];
    return v;
  };
  for (int it = 0; it < 5000; ++it) {
    double move = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cd den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      const cd dz = eval(z[i]) / den;
      z[i] -= dz;
      move = std::max(move, std::abs(dz));
    }
    if (move < 1e-15 * bound) break;
  }
  return z;
}

inline double abscissa_from_char_poly(const Matrix& a) {
  double best = -std::numeric_limits<double>::infinity();
  for (auto r : poly_roots(char_poly(a))) best = std::max(best, r.real());
  return best;
}

// max over size-k subsets of {0..m-1} of f, first (lexicographic) maximizer.
inline std::pair<std::vector<int>, double> best_subset(
    int m, int k, const std::function<double(const std::vector<int>&)>& f) {
  std::vector<int> cur, best;
  double best_value = -std::numeric_limits<double>::infinity();
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      const double v = f(cur);
      if (v > best_value) {
        best_value = v;
        best = cur;
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return {best, best_value};
}

// ---------------------------------------------------------------------------
// Random instances.

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  Matrix m(r, c);
  for (double& v : m.data()) v = g(rng);
  return m;
}

inline SymMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  return SymMatrix(random_matrix(n, n, rng));
}

// Random matrix shifted so that every eigenvalue has real part <= -margin,
// using the Gershgorin radius (no eigen-solver involved).
inline Matrix random_stable(std::size_t n, std::mt19937_64& rng, double margin = 0.5,
                            double scale = 1.0) {
  Matrix a = scale * random_matrix(n, n, rng);
  double shift = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = a(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r += std::abs(a(i, j));
    shift = std::max(shift, r + margin);
  }
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= shift;
  return a;
}

}  // namespace oracle
