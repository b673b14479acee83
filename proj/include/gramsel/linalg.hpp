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
#include <span>
#include <vector>

#include "gramsel/matrix.hpp"

namespace gramsel {

inline constexpr double kDefaultRankTolerance = 1e-9;

struct SymEigen {
  Spectrum spectrum;
  // Column i is the unit eigenvector of spectrum.values[i].
  std::optional<Matrix> vectors;
};

// Householder tridiagonalization followed by implicit QL with Wilkinson
// shifts. Throws ConvergenceError if an eigenvalue needs more than 60 sweeps.
SymEigen sym_eigen(const SymMatrix& m, bool want_vectors);
Spectrum sym_eigenvalues(const SymMatrix& m);

// Lower Cholesky factor L with m = L L^T, or nullopt when a pivot is not
// safely positive (pivot <= n * eps * max diagonal).
std::optional<Matrix> cholesky(const SymMatrix& m);

// tr(m^{-1}) from the Cholesky factor: ||L^{-1}||_F^2.
// Throws SingularMatrix (carrying lambda_n) when m is not positive definite.
double trace_inverse(const SymMatrix& m);

// sum_i log lambda_i(m) = 2 sum_i log L_ii. Throws SingularMatrix on non-PD input.
double log_det(const SymMatrix& m);

// x^T m^{-1} x through a Cholesky solve. Throws SingularMatrix on non-PD input.
double inverse_quadratic_form(const SymMatrix& m, std::span<const double> x);

// Number of eigenvalues strictly above rel_tol * max(lambda_1, 0).
std::size_t numerical_rank(const SymMatrix& m, double rel_tol = kDefaultRankTolerance);
std::size_t numerical_rank(const Spectrum& s, double rel_tol = kDefaultRankTolerance);

// Eigenvalues in [-1e-10 * lambda_1, 0) are Gramian round-off; returns 0 for
// those and the value unchanged otherwise.
double psd_clamp(double eigenvalue, double lambda_1);

// max Re(lambda) over the eigenvalues of a general square matrix.
double spectral_abscissa(const Matrix& a);

}  // namespace gramsel
