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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramsel {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An eigenvalue iteration ran out of sweeps.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// The dynamics matrix is not Hurwitz, so no infinite-horizon Gramian exists.
class UnstableSystem : public Error {
 public:
  explicit UnstableSystem(double abscissa)
      : Error("dynamics matrix is not stable: spectral abscissa = " +
              std::to_string(abscissa)),
        abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

// A matrix that had to be positive definite (or nonsingular) is not.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, double lambda_min)
      : Error(what + ": smallest eigenvalue = " + std::to_string(lambda_min)),
        lambda_min_(lambda_min) {}
  double lambda_min() const { return lambda_min_; }

 private:
  double lambda_min_;
};

// Enumeration would exceed the configured budget.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t count)
      : Error(what + " (" + std::to_string(count) + ")"), count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

// Metric evaluation failed for a specific actuator subset.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<int> subset)
      : Error(what + " [subset " + format(subset) + "]"), subset_(std::move(subset)) {}
  const std::vector<int>& subset() const { return subset_; }

 private:
  static std::string format(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s[i]);
    }
    return out + "}";
  }
  std::vector<int> subset_;
};

}  // namespace gramsel
