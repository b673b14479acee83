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
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "gramsel/matrix.hpp"

namespace gramsel {

using Vector = std::vector<double>;

// Network control instance: dx/dt = A x + B u, with B drawn from a catalog
// of candidate input columns, an optional pre-installed input matrix B0 and
// a regularizer epsilon that adds epsilon * I to the base Lyapunov
// right-hand side.
struct LinearSystem {
  Matrix a;
  std::vector<Vector> candidates;
  std::optional<Matrix> base;  // n x m
  double epsilon = 0.0;

  std::size_t n() const { return a.rows(); }
  std::size_t num_candidates() const { return candidates.size(); }

  // Checks dimensions, finiteness and epsilon >= 0. Stability is checked by
  // the Lyapunov solver.
  void validate() const;

  static std::vector<Vector> standard_basis(std::size_t n);
};

// Subset of candidate indices (0-based), kept strictly increasing.
class ActuatorSet {
 public:
  ActuatorSet() = default;
  ActuatorSet(std::initializer_list<int> indices);
  explicit ActuatorSet(std::vector<int> indices);
  static ActuatorSet from_mask(std::uint64_t mask);

  std::span<const int> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;

  ActuatorSet with(int i) const;
  ActuatorSet without(int i) const;
  ActuatorSet united(const ActuatorSet& other) const;
  ActuatorSet minus(const ActuatorSet& other) const;
  std::uint64_t mask() const;

  friend bool operator==(const ActuatorSet&, const ActuatorSet&) = default;
  friend auto operator<=>(const ActuatorSet&, const ActuatorSet&) = default;

 private:
  std::vector<int> indices_;
};

// Base Gramian plus one Gramian per candidate. Gramians of subsets are
// assembled by summation, never re-solved.
struct GramianBundle {
  SymMatrix w_base;  // from B0 B0^T + epsilon I; zero if neither is present
  std::vector<SymMatrix> w_each;  // from b_i b_i^T alone
  bool has_base = false;  // B0 present or epsilon > 0

  std::size_t n() const { return w_base.n(); }
  std::size_t num_candidates() const { return w_each.size(); }
};

// Builds the Lyapunov factorization once and solves the M+1 right-hand
// sides, `jobs` at a time.
GramianBundle build_bundle(const LinearSystem& sys, int jobs = 1);

// w_base + sum_{i in s} w_each[i], summed in increasing index order.
SymMatrix assemble(const GramianBundle& bundle, const ActuatorSet& s);

// Instance file: {"a": matrix, "candidates": [vectors] | "standard_basis",
// "base": matrix | null, "epsilon": real}. `epsilon_given` is false when the
// key is absent, so callers can apply the metric-dependent default.
struct InstanceFile {
  LinearSystem system;
  bool epsilon_given = false;
  nlohmann::json extra;  // any other top-level keys (adjacency, shift, ...)
};

InstanceFile parse_instance(const nlohmann::json& j);
nlohmann::json instance_to_json(const LinearSystem& sys);

}  // namespace gramsel
