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

#include "gramsel/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gramsel/errors.hpp"
#include "gramsel/simd.hpp"

namespace gramsel {
namespace {

constexpr int kMaxQlSweeps = 60;

// Householder reduction to tridiagonal form. On exit `v` holds the
// accumulated orthogonal transform, `d` the diagonal and `e` the
// subdiagonal in e[1..n-1].
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e); rotations are applied to `v`.
void tridiagonal_ql(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlSweeps) {
          throw ConvergenceError("symmetric eigenvalue iteration did not converge",
                                 iter);
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, ii + 1);
            v(k, ii + 1) = s * v(k, ii) + c * h;
            v(k, ii) = c * v(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

SymEigen sym_eigen(const SymMatrix& m, bool want_vectors) {
  const std::size_t n = m.n();
  if (n == 0) throw InvalidArgument("eigendecomposition of an empty matrix");
  Matrix v = m.matrix();
  std::vector<double> d(n), e(n);
  tridiagonalize(v, d, e);
  tridiagonal_ql(v, d, e);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  SymEigen out;
  out.spectrum.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.spectrum.values[i] = d[order[i]];
  if (want_vectors) {
    Matrix sorted(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) sorted(k, i) = v(k, order[i]);
    }
    out.vectors = std::move(sorted);
  }
  return out;
}

Spectrum sym_eigenvalues(const SymMatrix& m) { return sym_eigen(m, false).spectrum; }

std::optional<Matrix> cholesky(const SymMatrix& m) {
  const std::size_t n = m.n();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, m(i, i));
  const double floor =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;
  if (!(max_diag > 0.0)) return std::nullopt;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto lj = l.row(j).first(j);
    const double pivot = m(j, j) - simd::sum_squares(lj);
    if (!(pivot > floor)) return std::nullopt;
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double s = m(i, j) - simd::dot(l.row(i).first(j), lj);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace {

Matrix require_cholesky(const SymMatrix& m, const char* what) {
  auto l = cholesky(m);
  if (!l) throw SingularMatrix(what, sym_eigenvalues(m).min());
  return *std::move(l);
}

}  // namespace

double trace_inverse(const SymMatrix& m) {
  const Matrix l = require_cholesky(m, "trace_inverse needs a positive definite matrix");
  const std::size_t n = m.n();
  // Rows of L^{-1}: row_i = (e_i - sum_{p<i} L_ip row_p) / L_ii.
  Matrix inv(n, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = inv.row(i);
    ri[i] = 1.0;
    for (std::size_t p = 0; p < i; ++p) {
      const double lip = l(i, p);
      if (lip != 0.0) simd::axpy(-lip, inv.row(p).first(i), ri.first(i));
    }
    const double inv_diag = 1.0 / l(i, i);
    for (std::size_t j = 0; j <= i; ++j) ri[j] *= inv_diag;
    total += simd::sum_squares(ri.first(i + 1));
  }
  return total;
}

double log_det(const SymMatrix& m) {
  const Matrix l = require_cholesky(m, "log_det needs a positive definite matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.n(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

double inverse_quadratic_form(const SymMatrix& m, std::span<const double> x) {
  if (x.size() != m.n()) throw InvalidArgument("vector dimension mismatch");
  const Matrix l = require_cholesky(m, "quadratic form needs a positive definite matrix");
  // ||L^{-1} x||^2
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i = 0; i < m.n(); ++i) {
    y[i] = (y[i] - simd::dot(l.row(i).first(i), std::span<const double>(y).first(i))) /
           l(i, i);
  }
  return simd::sum_squares(y);
}

double psd_clamp(double eigenvalue, double lambda_1) {
  if (eigenvalue < 0.0 && eigenvalue >= -1e-10 * std::max(lambda_1, 0.0)) return 0.0;
  return eigenvalue;
}

std::size_t numerical_rank(const Spectrum& s, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidArgument("rank tolerance must lie in (0, 1)");
  }
  const double threshold = rel_tol * std::max(s.max(), 0.0);
  return static_cast<std::size_t>(std::count_if(
      s.values.begin(), s.values.end(), [&](double v) { return v > threshold; }));
}

std::size_t numerical_rank(const SymMatrix& m, double rel_tol) {
  return numerical_rank(sym_eigenvalues(m), rel_tol);
}

double spectral_abscissa(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0) {
    throw InvalidArgument("spectral abscissa needs a non-empty square matrix");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("general eigenvalue iteration did not converge",
                           static_cast<int>(40 * n));
  }
  return solver.eigenvalues().real().maxCoeff();
}

}  // namespace gramsel
