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

#include "gramsel/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"
#include "gramsel/simd.hpp"

namespace gramsel {
namespace {

constexpr std::size_t kPanelWidth = 64;

// A W + W A^T for a row-major n x n W stored flat.
void apply_operator(const Matrix& a, std::span<const double> w, std::span<double> out) {
  const std::size_t n = a.rows();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto out_row = out.subspan(i * n, n);
    for (std::size_t p = 0; p < n; ++p) {
      // (A W)_{i,:} += A_ip W_{p,:}
      simd::axpy(a(i, p), w.subspan(p * n, n), out_row);
    }
    for (std::size_t j = 0; j < n; ++j) {
      // (W A^T)_{ij} = W_{i,:} . A_{j,:}
      out_row[j] += simd::dot(w.subspan(i * n, n), a.row(j));
    }
  }
}

}  // namespace

LyapunovSolver::LyapunovSolver(Matrix a) : a_(std::move(a)) {
  if (!a_.is_square() || a_.rows() == 0) {
    throw InvalidArgument("Lyapunov solver needs a non-empty square matrix");
  }
  abscissa_ = spectral_abscissa(a_);
  if (!(abscissa_ < 0.0)) throw UnstableSystem(abscissa_);

  const std::size_t n = a_.rows();
  const std::size_t big = n * n;
  lu_ = Matrix(big, big);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto row = lu_.row(i * n + j);
      for (std::size_t p = 0; p < n; ++p) {
        row[p * n + j] += a_(i, p);
        row[i * n + p] += a_(j, p);
      }
    }
  }

  const double tiny = static_cast<double>(big) *
                      std::numeric_limits<double>::epsilon() * lu_.max_abs();
  pivots_.resize(big);
  for (std::size_t kb = 0; kb < big; kb += kPanelWidth) {
    const std::size_t kend = std::min(kb + kPanelWidth, big);

    // Unblocked LU of the tall panel [kb, big) x [kb, kend).
    for (std::size_t c = kb; c < kend; ++c) {
      std::size_t piv = c;
      double best = std::abs(lu_(c, c));
      for (std::size_t r = c + 1; r < big; ++r) {
        const double v = std::abs(lu_(r, c));
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (!(best > tiny)) {
        throw SingularMatrix("Lyapunov operator is numerically singular", best);
      }
      pivots_[c] = piv;
      if (piv != c) std::swap_ranges(lu_.row(c).begin(), lu_.row(c).end(), lu_.row(piv).begin());

      const double inv = 1.0 / lu_(c, c);
      const auto urow = lu_.row(c).subspan(c + 1, kend - c - 1);
      for (std::size_t r = c + 1; r < big; ++r) {
        double& lrc = lu_(r, c);
        if (lrc == 0.0) continue;
        lrc *= inv;
        simd::axpy(-lrc, urow, lu_.row(r).subspan(c + 1, kend - c - 1));
      }
    }
    if (kend == big) break;

    const std::size_t tail = big - kend;
    // U12 = L11^{-1} A12
    for (std::size_t i = kb + 1; i < kend; ++i) {
      auto ri = lu_.row(i).subspan(kend, tail);
      for (std::size_t p = kb; p < i; ++p) {
        const double l = lu_(i, p);
        if (l != 0.0) simd::axpy(-l, lu_.row(p).subspan(kend, tail), ri);
      }
    }
    // A22 -= L21 U12
    for (std::size_t r = kend; r < big; ++r) {
      auto rr = lu_.row(r).subspan(kend, tail);
      for (std::size_t p = kb; p < kend; ++p) {
        const double l = lu_(r, p);
        if (l != 0.0) simd::axpy(-l, lu_.row(p).subspan(kend, tail), rr);
      }
    }
  }
}

void LyapunovSolver::solve_in_place(std::vector<double>& x) const {
  const std::size_t big = x.size();
  for (std::size_t c = 0; c < big; ++c) {
    if (pivots_[c] != c) std::swap(x[c], x[pivots_[c]]);
  }
  const std::span<double> xs(x);
  for (std::size_t i = 1; i < big; ++i) {
    x[i] -= simd::dot(lu_.row(i).first(i), xs.first(i));
  }
  for (std::size_t i = big; i-- > 0;) {
    const double s = simd::dot(lu_.row(i).subspan(i + 1), xs.subspan(i + 1));
    x[i] = (x[i] - s) / lu_(i, i);
  }
}

SymMatrix LyapunovSolver::solve(const SymMatrix& q) const {
  const std::size_t n = a_.rows();
  if (q.n() != n) throw InvalidArgument("Lyapunov right-hand side has wrong dimension");
  const std::size_t big = n * n;

  std::vector<double> w(big);
  for (std::size_t k = 0; k < big; ++k) w[k] = -q.data()[k];
  solve_in_place(w);

  // Refine: W += L^{-1}(-(A W + W A^T + Q)).
  std::vector<double> r(big);
  apply_operator(a_, w, r);
  for (std::size_t k = 0; k < big; ++k) r[k] = -(r[k] + q.data()[k]);
  solve_in_place(r);
  for (std::size_t k = 0; k < big; ++k) w[k] += r[k];

  return SymMatrix(Matrix(n, n, std::move(w)));
}

double LyapunovSolver::residual_norm(const SymMatrix& w, const SymMatrix& q) const {
  const std::size_t n = a_.rows();
  std::vector<double> r(n * n);
  apply_operator(a_, w.data(), r);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += q.data()[k];
  return std::sqrt(simd::sum_squares(r));
}

SymMatrix solve_lyapunov(const Matrix& a, const SymMatrix& q) {
  return LyapunovSolver(a).solve(q);
}

}  // namespace gramsel
