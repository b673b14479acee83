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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gramsel/simd.hpp"

namespace gramsel::simd {

#if defined(GRAMSEL_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(GRAMSEL_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(GRAMSEL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& current_table() {
  static std::atomic<const KernelTable*> table{kernels_for(detect_backend())};
  return table;
}

std::atomic<Backend>& current_backend() {
  static std::atomic<Backend> backend{detect_backend()};
  return backend;
}

}  // namespace

const KernelTable* kernels_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &scalar_kernels();
    case Backend::kAvx2:
#if defined(GRAMSEL_HAVE_AVX2)
      return cpu_has_avx2() ? &avx2_kernels() : nullptr;
#else
      return nullptr;
#endif
    case Backend::kNeon:
#if defined(GRAMSEL_HAVE_NEON)
      return &neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect_backend() {
  if (const char* env = std::getenv("GRAMSEL_SIMD");
      env != nullptr && std::string(env) == "scalar") {
    return Backend::kScalar;
  }
  if (cpu_has_avx2()) return Backend::kAvx2;
#if defined(GRAMSEL_HAVE_NEON)
  return Backend::kNeon;
#else
  return Backend::kScalar;
#endif
}

Backend active_backend() { return current_backend().load(); }

void set_backend(Backend backend) {
  const KernelTable* table = kernels_for(backend);
  if (table == nullptr) {
    throw std::invalid_argument("SIMD backend '" +
                                std::string(backend_name(backend)) +
                                "' is not available on this machine");
  }
  current_table().store(table);
  current_backend().store(backend);
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable& active() { return *current_table().load(std::memory_order_relaxed); }

}  // namespace gramsel::simd
