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

#include "goldenbench/simd/kernels.h"

namespace goldenbench::simd {

namespace {

double squared_l2_scalar(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += diff * diff;
  }
  return sum;
}

DotNorms dot_norms_scalar(const float* a, const float* b, std::size_t n) {
  DotNorms out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    out.dot += x * y;
    out.norm_sq_a += x * x;
    out.norm_sq_b += y * y;
  }
  return out;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &squared_l2_scalar,
                                 &dot_norms_scalar};
  return table;
}

}  // namespace goldenbench::simd
