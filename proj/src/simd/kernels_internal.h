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

// Raw-pointer entry points of the vector variants. Kept free of standard
// library headers: the translation units defining them are built with
// wider ISA flags, and no inline library code may be emitted from there.

#ifndef GOLDENBENCH_SRC_SIMD_KERNELS_INTERNAL_H_
#define GOLDENBENCH_SRC_SIMD_KERNELS_INTERNAL_H_

#include <cstddef>

namespace goldenbench::simd::detail {

double squared_l2_avx2(const float* a, const float* b, std::size_t n);
void dot_norms_avx2(const float* a, const float* b, std::size_t n,
                    double* out3);

double squared_l2_neon(const float* a, const float* b, std::size_t n);
void dot_norms_neon(const float* a, const float* b, std::size_t n,
                    double* out3);

}  // namespace goldenbench::simd::detail

#endif  // GOLDENBENCH_SRC_SIMD_KERNELS_INTERNAL_H_
