// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <string>

#include "goldenbench/simd/kernels.h"
#include "kernels_internal.h"

namespace goldenbench::simd {

namespace {

#if defined(GOLDENBENCH_HAVE_AVX2)
DotNorms dot_norms_avx2_table(const float* a, const float* b, std::size_t n) {
  double out[3];
  detail::dot_norms_avx2(a, b, n, out);
  return {out[0], out[1], out[2]};
}
#endif

#if defined(GOLDENBENCH_HAVE_NEON)
DotNorms dot_norms_neon_table(const float* a, const float* b, std::size_t n) {
  double out[3];
  detail::dot_norms_neon(a, b, n, out);
  return {out[0], out[1], out[2]};
}
#endif

const KernelTable* select_kernels() {
  const char* env = std::getenv("GOLDENBENCH_SIMD");
  const std::string choice = env == nullptr ? "auto" : env;
  if (choice == "scalar") return &scalar_kernels();
  if (choice == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
  if (choice == "neon" && neon_kernels() != nullptr) return neon_kernels();
  // Unknown or unavailable requests fall back to auto.
  if (avx2_kernels() != nullptr) return avx2_kernels();
  if (neon_kernels() != nullptr) return neon_kernels();
  return &scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(GOLDENBENCH_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", &detail::squared_l2_avx2,
                                 &dot_norms_avx2_table};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(GOLDENBENCH_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  static const KernelTable table{"neon", &detail::squared_l2_neon,
                                 &dot_norms_neon_table};
  return &table;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* t = avx2_kernels()) out.push_back(t);
  if (const KernelTable* t = neon_kernels()) out.push_back(t);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable* table = select_kernels();
  return *table;
}

double squared_l2(std::span<const float> a, std::span<const float> b) {
  return active_kernels().squared_l2(a.data(), b.data(), a.size());
}

DotNorms dot_norms(std::span<const float> a, std::span<const float> b) {
  return active_kernels().dot_norms(a.data(), b.data(), a.size());
}

}  // namespace goldenbench::simd
