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

#include "gramsel/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gramsel/errors.hpp"
#include "gramsel/lyapunov.hpp"
#include "gramsel/parallel.hpp"

namespace gramsel {

void LinearSystem::validate() const {
  if (!a.is_square() || a.rows() == 0) {
    throw InvalidArgument("dynamics matrix must be square with n >= 1");
  }
  const std::size_t dim = n();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].size() != dim) {
      throw InvalidArgument("candidate " + std::to_string(i) + " has dimension " +
                            std::to_string(candidates[i].size()) + ", expected " +
                            std::to_string(dim));
    }
    for (double v : candidates[i]) {
      if (!std::isfinite(v)) throw InvalidArgument("candidate entries must be finite");
    }
  }
  if (base && base->rows() != dim) {
    throw InvalidArgument("base input matrix must have n rows");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be a finite value >= 0");
  }
}

std::vector<Vector> LinearSystem::standard_basis(std::size_t n) {
  std::vector<Vector> out(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1.0;
  return out;
}

ActuatorSet::ActuatorSet(std::initializer_list<int> indices)
    : ActuatorSet(std::vector<int>(indices)) {}

ActuatorSet::ActuatorSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("actuator set contains duplicate indices");
  }
  if (!indices_.empty() && indices_.front() < 0) {
    throw InvalidArgument("actuator index out of range");
  }
}

ActuatorSet ActuatorSet::from_mask(std::uint64_t mask) {
  ActuatorSet s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s.indices_.push_back(i);
  }
  return s;
}

bool ActuatorSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

ActuatorSet ActuatorSet::with(int i) const {
  if (contains(i)) return *this;
  ActuatorSet s = *this;
  s.indices_.insert(std::upper_bound(s.indices_.begin(), s.indices_.end(), i), i);
  return s;
}

ActuatorSet ActuatorSet::without(int i) const {
  ActuatorSet s = *this;
  std::erase(s.indices_, i);
  return s;
}

ActuatorSet ActuatorSet::united(const ActuatorSet& other) const {
  ActuatorSet s;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(s.indices_));
  return s;
}

ActuatorSet ActuatorSet::minus(const ActuatorSet& other) const {
  ActuatorSet s;
  std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                      other.indices_.end(), std::back_inserter(s.indices_));
  return s;
}

std::uint64_t ActuatorSet::mask() const {
  std::uint64_t m = 0;
  for (int i : indices_) {
    if (i > 63) throw InvalidArgument("actuator index too large for a bit mask");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

GramianBundle build_bundle(const LinearSystem& sys, int jobs) {
  sys.validate();
  const std::size_t n = sys.n();
  const LyapunovSolver solver(sys.a);

  GramianBundle bundle;
  bundle.has_base = sys.base.has_value() || sys.epsilon > 0.0;
  bundle.w_each.resize(sys.num_candidates());

  // Slot 0 is the base right-hand side, slot i + 1 candidate i.
  parallel_for(sys.num_candidates() + 1, jobs, [&](std::size_t slot) {
    if (slot == 0) {
      if (!bundle.has_base) {
        bundle.w_base = SymMatrix(n);
        return;
      }
      Matrix q(n, n);
      if (sys.base) q += (*sys.base) * sys.base->transpose();
      for (std::size_t i = 0; i < n; ++i) q(i, i) += sys.epsilon;
      bundle.w_base = solver.solve(SymMatrix(q));
    } else {
      bundle.w_each[slot - 1] = solver.solve(SymMatrix::outer(sys.candidates[slot - 1]));
    }
  });
  return bundle;
}

SymMatrix assemble(const GramianBundle& bundle, const ActuatorSet& s) {
  SymMatrix w = bundle.w_base;
  for (int i : s.indices()) {
    if (static_cast<std::size_t>(i) >= bundle.num_candidates()) {
      throw InvalidArgument("actuator index " + std::to_string(i) + " out of range");
    }
    w += bundle.w_each[static_cast<std::size_t>(i)];
  }
  return w;
}

InstanceFile parse_instance(const nlohmann::json& j) {
  InstanceFile out;
  LinearSystem& sys = out.system;
  sys.a = j.at("a").get<Matrix>();
  if (!sys.a.is_square()) throw InvalidArgument("\"a\" must be square");

  const auto& cands = j.contains("candidates") ? j.at("candidates")
                                               : nlohmann::json("standard_basis");
  if (cands.is_string()) {
    if (cands.get<std::string>() != "standard_basis") {
      throw InvalidArgument("unknown candidate catalog '" + cands.get<std::string>() + "'");
    }
    sys.candidates = LinearSystem::standard_basis(sys.n());
  } else {
    sys.candidates = cands.get<std::vector<Vector>>();
  }

  if (j.contains("base") && !j.at("base").is_null()) sys.base = j.at("base").get<Matrix>();
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) {
    sys.epsilon = j.at("epsilon").get<double>();
    out.epsilon_given = true;
  }
  sys.validate();

  out.extra = nlohmann::json::object();
  for (const auto& [key, value] : j.items()) {
    if (key != "a" && key != "candidates" && key != "base" && key != "epsilon") {
      out.extra[key] = value;
    }
  }
  return out;
}

nlohmann::json instance_to_json(const LinearSystem& sys) {
  nlohmann::json j;
  j["a"] = sys.a;
  if (sys.candidates == LinearSystem::standard_basis(sys.n())) {
    j["candidates"] = "standard_basis";
  } else {
    j["candidates"] = sys.candidates;
  }
  j["base"] = sys.base ? nlohmann::json(*sys.base) : nlohmann::json(nullptr);
  j["epsilon"] = sys.epsilon;
  return j;
}

}  // namespace gramsel
