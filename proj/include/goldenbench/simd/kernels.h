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

// Float32 vector kernels used by the embedding metrics. Inputs are the 32-bit
// values stored in GSEB files; every kernel widens to 64-bit before
// multiplying and accumulates in 64-bit.
//
// A scalar reference implementation is always available. Vector variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled when the target supports
// them and picked at runtime. Variants differ from the scalar reference only
// by summation order.

#ifndef GOLDENBENCH_SIMD_KERNELS_H_
#define GOLDENBENCH_SIMD_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace goldenbench::simd {

struct DotNorms {
  double dot = 0.0;
  double norm_sq_a = 0.0;
  double norm_sq_b = 0.0;
};

using SquaredL2Fn = double (*)(const float* a, const float* b, std::size_t n);
using DotNormsFn = DotNorms (*)(const float* a, const float* b, std::size_t n);

struct KernelTable {
  std::string_view name;
  SquaredL2Fn squared_l2;
  DotNormsFn dot_norms;
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// The table used by the metric code. Selected once, on first use: the
// GOLDENBENCH_SIMD environment variable ("scalar", "avx2", "neon", "auto")
// overrides the default of picking the widest available variant.
const KernelTable& active_kernels();

// Convenience wrappers over active_kernels(). Callers check sizes.
double squared_l2(std::span<const float> a, std::span<const float> b);
DotNorms dot_norms(std::span<const float> a, std::span<const float> b);

}  // namespace goldenbench::simd

#endif  // GOLDENBENCH_SIMD_KERNELS_H_
