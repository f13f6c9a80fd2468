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

// Built with -mavx2 -mfma. Only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.h"

namespace goldenbench::simd::detail {

namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double squared_l2_avx2(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0 = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
    const __m256d b0 = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
    const __m256d a1 = _mm256_cvtps_pd(_mm_loadu_ps(a + i + 4));
    const __m256d b1 = _mm256_cvtps_pd(_mm_loadu_ps(b + i + 4));
    const __m256d d0 = _mm256_sub_pd(a0, b0);
    const __m256d d1 = _mm256_sub_pd(a1, b1);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  if (i + 4 <= n) {
    const __m256d a0 = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
    const __m256d b0 = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
    const __m256d d0 = _mm256_sub_pd(a0, b0);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    i += 4;
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += diff * diff;
  }
  return sum;
}

void dot_norms_avx2(const float* a, const float* b, std::size_t n,
                    double* out3) {
  __m256d dot = _mm256_setzero_pd();
  __m256d norm_a = _mm256_setzero_pd();
  __m256d norm_b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
    const __m256d y = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
    dot = _mm256_fmadd_pd(x, y, dot);
    norm_a = _mm256_fmadd_pd(x, x, norm_a);
    norm_b = _mm256_fmadd_pd(y, y, norm_b);
  }
  double d = horizontal_sum(dot);
  double na = horizontal_sum(norm_a);
  double nb = horizontal_sum(norm_b);
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
