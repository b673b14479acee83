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

// Data-parallel inner loops used by the dense kernels. Every routine has a
// scalar reference implementation; vector variants (AVX2+FMA on x86-64, NEON
// on aarch64) are picked once at startup from the CPU feature set.
//
// `add` is a pure elementwise sum and is bit-identical across backends.
// `axpy`, `dot` and `sum_squares` may differ by rounding (FMA, reassociated
// partial sums).

#include <cstddef>
#include <span>
#include <string_view>

namespace gramsel::simd {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y += x
  void (*add)(const double* x, double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();
// Returns nullptr when the backend was not compiled in.
const KernelTable* kernels_for(Backend backend);

// Best backend supported by this CPU, unless GRAMSEL_SIMD=scalar is set.
Backend detect_backend();
Backend active_backend();
// Overrides the process-wide selection. Throws if the backend is unavailable.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void add(std::span<const double> x, std::span<double> y) {
  active().add(x.data(), y.data(), x.size());
}
inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

}  // namespace gramsel::simd
