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

#include <cstddef>
#include <vector>

#include "gramsel/matrix.hpp"

namespace gramsel {

// Solves the continuous-time Lyapunov equation A W + W A^T + Q = 0.
//
// The operator W -> A W + W A^T is assembled as the n^2 x n^2 matrix
// I (x) A + A (x) I over row-major vec(W) and LU-factorized once with
// partial pivoting. Every later solve() reuses that factorization, so the
// Gramians of all candidate actuators of one system cost one factorization
// plus one O(n^4) triangular solve each.
//
// Immutable after construction; solve() is const and thread-safe.
class LyapunovSolver {
 public:
  // Throws UnstableSystem when the spectral abscissa of `a` is >= 0 and
  // SingularMatrix when the operator is numerically singular.
  explicit LyapunovSolver(Matrix a);

  std::size_t n() const { return a_.rows(); }
  const Matrix& a() const { return a_; }
  double abscissa() const { return abscissa_; }

  // Returns the symmetrized solution W; one step of iterative refinement is
  // applied against the residual.
  SymMatrix solve(const SymMatrix& q) const;

  // ||A W + W A^T + Q||_F
  double residual_norm(const SymMatrix& w, const SymMatrix& q) const;

 private:
  void solve_in_place(std::vector<double>& rhs) const;

  Matrix a_;
  double abscissa_ = 0.0;
  Matrix lu_;
  std::vector<std::size_t> pivots_;
};

// One-shot convenience wrapper around LyapunovSolver.
SymMatrix solve_lyapunov(const Matrix& a, const SymMatrix& q);

}  // namespace gramsel
