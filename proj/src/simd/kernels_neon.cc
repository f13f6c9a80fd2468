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

#include <arm_neon.h>

#include "kernels_internal.h"

namespace goldenbench::simd::detail {

double squared_l2_neon(const float* a, const float* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float32x4_t vb = vld1q_f32(b + i);
    const float64x2_t d0 =
        vsubq_f64(vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
    const float64x2_t d1 = vsubq_f64(vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += diff * diff;
  }
  return sum;
}

void dot_norms_neon(const float* a, const float* b, std::size_t n,
                    double* out3) {
  float64x2_t dot = vdupq_n_f64(0.0);
  float64x2_t norm_a = vdupq_n_f64(0.0);
  float64x2_t norm_b = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vcvt_f64_f32(vld1_f32(a + i));
    const float64x2_t y = vcvt_f64_f32(vld1_f32(b + i));
    dot = vfmaq_f64(dot, x, y);
    norm_a = vfmaq_f64(norm_a, x, x);
    norm_b = vfmaq_f64(norm_b, y, y);
  }
  double d = vaddvq_f64(dot);
  double na = vaddvq_f64(norm_a);
  double nb = vaddvq_f64(norm_b);
  for (; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    d += x * y;
    na += x * x;
    nb += y * y;
  }
  out3[0] = d;
  out3[1] = na;
  out3[2] = nb;
}

}  // namespace goldenbench::simd::detail
